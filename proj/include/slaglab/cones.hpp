#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "slaglab/cxmat.hpp"
#include "slaglab/errors.hpp"
#include "slaglab/rng.hpp"
#include "slaglab/symplectic.hpp"

namespace slaglab {

/// The cone catalog. Each entry is a Lagrangian cone in C^N whose link is a
/// homogeneous space or an explicit parametrized family:
///
///  - SuQuotient(n):    link SU(n) embedded as A/sqrt(n) in gl(n,C) = C^{n^2}
///  - SuSoQuotient(n):  link SU(n)/SO(n), A A^T/sqrt(n) in Sym(n,C)
///  - SuSpQuotient(n):  link SU(2n)/Sp(n), A J A^T/sqrt(2n) in so(2n,C)
///  - SchoenWolfson(p,q): plane-curve cone over gamma_{p,q} in C^2
///  - CliffordTorus(n): cone over the diagonal torus in C^n
///
/// All are special Lagrangian except SchoenWolfson with p != q, which is
/// Lagrangian with winding phase.
enum class ConeVariant {
    SuQuotient,
    SuSoQuotient,
    SuSpQuotient,
    SchoenWolfson,
    CliffordTorus,
};

class ConeSpec {
  public:
    /// n >= 2. The catalogued range starts at n = 3; n = 2 degenerates to a
    /// flat Lagrangian plane and carries an advisory saying so.
    static ConeSpec su(int n);
    /// n >= 2.
    static ConeSpec su_so(int n);
    /// n >= 2 (group SU(2n)).
    static ConeSpec su_sp(int n);
    /// p, q >= 1 and coprime.
    static ConeSpec schoen_wolfson(int p, int q);
    /// n >= 2.
    static ConeSpec clifford_torus(int n);

    ConeVariant variant() const { return variant_; }

    /// Ambient complex dimension N. The cone has real dimension N and the
    /// link real dimension N - 1.
    int ambient_dimension() const;
    int link_dimension() const { return ambient_dimension() - 1; }

    bool is_special_lagrangian() const;

    /// Matrix size of the group parameter (n for the SU cones, 2n for the
    /// Sp quotient), or 0 for the angle-parametrized variants.
    int group_size() const;

    /// Defining parameter for every variant except SchoenWolfson.
    int n() const { return a_; }
    /// SchoenWolfson winding pair.
    int p() const { return a_; }
    int q() const { return b_; }

    /// Identifier used by the command line: su(3), su-so(3), su-sp(2),
    /// sw(1,2), clifford(3).
    std::string id() const;

    /// Catalog metadata for the three group quotients: the equivariant
    /// smoothing problem with decay is recorded as not solvable for them.
    std::optional<std::string> smoothability_note() const;
    /// Extra caveat attached to su(2).
    std::optional<std::string> advisory() const;

  private:
    ConeSpec(ConeVariant v, int a, int b) : variant_(v), a_(a), b_(b) {}

    ConeVariant variant_;
    int a_;
    int b_;
};

/// Link point parameter: a special unitary matrix for the group quotients,
/// one angle for SchoenWolfson, n - 1 angles for the Clifford torus.
using LinkParameter = std::variant<Eigen::MatrixXcd, Eigen::VectorXd>;

/// Haar-ish random group element (Gaussian, QR, phase fix, determinant
/// normalized into SU) or uniform angles, depending on the variant.
LinkParameter random_link_parameter(const ConeSpec& cone, Rng& rng);

/// Unit-sphere point of the link. Throws InvalidParameter when the
/// alternative held by `param` does not fit the variant, the matrix is not
/// special unitary, or the angle count is wrong.
Eigen::VectorXcd sample_link_point(const ConeSpec& cone, const LinkParameter& param);

/// Orthonormal frame of the cone tangent space at the sampled point:
/// N vectors, link directions first, the radial direction (the point
/// itself) last. Throws DegenerateFrame if the orbit directions fail to
/// span, which no valid catalog parameter triggers.
RealFrame tangent_frame(const ConeSpec& cone, const LinkParameter& param);

enum class ConeVerdict { SpecialLagrangian, LagrangianOnly, NotLagrangian };

std::string to_string(ConeVerdict v);

struct ConeReport {
    double sphere_residual = 0.0;
    double legendrian_residual = 0.0;
    double isotropy_residual = 0.0;
    Complex phase_mean{0.0, 0.0};
    double phase_stddev = 0.0;
    ConeVerdict verdict = ConeVerdict::NotLagrangian;
};

/// Residual sweep over `samples` random link points (samples >= 10).
/// Residual fields hold worst cases. SpecialLagrangian means every residual
/// and the phase spread stay within tol; LagrangianOnly keeps the isotropy
/// bound while the phase wanders. Reports are bit-reproducible per seed.
ConeReport verify_cone(const ConeSpec& cone, int samples, double tol,
                       std::uint64_t seed);

/// Moment functions of the cone's symmetry algebra, normalized so that
/// d mu = iota_v omega and mu(0) = 0. The group quotients get the full
/// su(k) action, the Clifford torus its diagonal torus, SchoenWolfson(p,p)
/// its single circle. SchoenWolfson with p != q has no traceless symmetry
/// to record and gets an empty list.
std::vector<HermQuad> symmetry_generators(const ConeSpec& cone);

/// max |mu| over sampled link points and the given generators. The catalog
/// cones sit inside the zero level set of their own symmetry moments, so
/// this is a residual for them; generators that do not preserve the cone
/// (translations, say) give genuinely nonzero values.
double moment_level_check(const ConeSpec& cone,
                          const std::vector<HermQuad>& generators,
                          int samples, std::uint64_t seed);

/// Number of catalogued closed circles in the link, indexing link_loop.
int link_loop_directions(const ConeSpec& cone);

/// Closed loop inside the link along the given direction. with_frames
/// attaches the cone tangent frame at every sample (needed for
/// maslov_index); pass false for dense quadrature where only points matter.
LoopTrace link_loop(const ConeSpec& cone, int direction, int segments,
                    bool with_frames = true);

/// The two-ended smoothing of a catalog cone:
///   L_t = { z sigma : sigma in link, Im z^n = t, arg z in (0, pi/n) },
/// n = cone dimension. Asymptotic to the cone union its pi/n rotation, with
/// distance to the rays falling off like r^{1-n}.
class SmoothingFamily {
  public:
    /// t = 0 is accepted here but every branch query on it reports
    /// NoBranchSolution: the level set degenerates to the cone pair itself.
    SmoothingFamily(ConeSpec base, double t);

    const ConeSpec& base() const { return base_; }
    double t() const { return t_; }
    int n() const { return base_.ambient_dimension(); }
    /// Decay rate 2 - n of the family.
    double rate() const { return 2.0 - n(); }

  private:
    ConeSpec base_;
    double t_;
};

/// arg z of the point of L_t at |z| = r. Branch 0 hugs the cone ray
/// (arg in (0, pi/2n]), branch 1 its rotation (arg in [pi/2n, pi/n)).
/// Solved by bisection on r^n sin(n a) = t, which stays fully accurate for
/// r^n >> t where the naive Im z^n would cancel. NoBranchSolution when
/// t <= 0 or r^n < t; InvalidArgument for r <= 0 or branch outside {0,1}.
double smoothing_angle(const SmoothingFamily& family, double r, int branch);

/// z * (link point), z = r e^{i arg} from smoothing_angle.
Eigen::VectorXcd smoothing_point(const SmoothingFamily& family, double r,
                                 int branch, const LinkParameter& param);

/// Orthonormal tangent frame of L_t at smoothing_point: rotated link
/// directions first, the radius-curve direction last.
RealFrame smoothing_frame(const SmoothingFamily& family, double r, int branch,
                          const LinkParameter& param);

/// Log-log least-squares slope of dist(L_t point, nearest of the two cone
/// rays through the sampled link point) against r, on branch 0. Expected
/// slope 1 - n. radii needs >= 5 entries spanning >= 2 decades, else
/// InsufficientRange.
double decay_rate_fit(const SmoothingFamily& family,
                      const std::vector<double>& radii,
                      std::uint64_t seed = 0);

}  // namespace slaglab
