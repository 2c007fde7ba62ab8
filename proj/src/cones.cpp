#include "slaglab/cones.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

namespace slaglab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

int ambient_dim(ConeVariant v, int a) {
    switch (v) {
        case ConeVariant::SuQuotient:
            return a * a;
        case ConeVariant::SuSoQuotient:
            return a * (a + 1) / 2;
        case ConeVariant::SuSpQuotient:
            return a * (2 * a - 1);
        case ConeVariant::SchoenWolfson:
            return 2;
        case ConeVariant::CliffordTorus:
            return a;
    }
    throw InvalidArgument("unknown cone variant");
}

bool is_group_variant(ConeVariant v) {
    return v == ConeVariant::SuQuotient || v == ConeVariant::SuSoQuotient ||
           v == ConeVariant::SuSpQuotient;
}

// Coordinate charts for the three matrix ambients. gl(n,C) is read
// row-major; Sym(n,C) lists the diagonal first and then sqrt(2)-scaled
// upper pairs; so(2n,C) lists sqrt(2)-scaled upper pairs. All three are
// isometries onto C^N with the Frobenius inner product.

Eigen::VectorXcd gl_coords(const Eigen::MatrixXcd& m) {
    int n = static_cast<int>(m.rows());
    Eigen::VectorXcd c(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i * n + j) = m(i, j);
    return c;
}

Eigen::MatrixXcd gl_matrix(int n, const Eigen::VectorXcd& c) {
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = c(i * n + j);
    return m;
}

Eigen::VectorXcd sym_coords(const Eigen::MatrixXcd& m) {
    int n = static_cast<int>(m.rows());
    Eigen::VectorXcd c(n * (n + 1) / 2);
    int k = 0;
    for (int i = 0; i < n; ++i) c(k++) = m(i, i);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) c(k++) = kSqrt2 * m(i, j);
    return c;
}

Eigen::MatrixXcd sym_matrix(int n, const Eigen::VectorXcd& c) {
    Eigen::MatrixXcd m(n, n);
    int k = 0;
    for (int i = 0; i < n; ++i) m(i, i) = c(k++);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            m(i, j) = c(k) / kSqrt2;
            m(j, i) = m(i, j);
            ++k;
        }
    return m;
}

Eigen::VectorXcd antisym_coords(const Eigen::MatrixXcd& m) {
    int n = static_cast<int>(m.rows());
    Eigen::VectorXcd c(n * (n - 1) / 2);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) c(k++) = kSqrt2 * m(i, j);
    return c;
}

Eigen::MatrixXcd antisym_matrix(int n, const Eigen::VectorXcd& c) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            m(i, j) = c(k) / kSqrt2;
            m(j, i) = -m(i, j);
            ++k;
        }
    return m;
}

// Symplectic reference form on C^{2n}, the one conjugated by the group.
Eigen::MatrixXcd j_matrix(int n) {
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        j(i, n + i) = -1.0;
        j(n + i, i) = 1.0;
    }
    return j;
}

// Fixed enumeration of a basis of su(k): traceless diagonals first,
// then the antisymmetric and i-symmetric pair for every i < j.
std::vector<Eigen::MatrixXcd> su_basis(int k) {
    std::vector<Eigen::MatrixXcd> basis;
    basis.reserve(static_cast<std::size_t>(k) * k - 1);
    for (int d = 0; d + 1 < k; ++d) {
        Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(k, k);
        x(d, d) = Complex(0, 1);
        x(d + 1, d + 1) = Complex(0, -1);
        basis.push_back(x);
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(k, k);
            x(i, j) = 1.0;
            x(j, i) = -1.0;
            basis.push_back(x);
            Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(k, k);
            y(i, j) = Complex(0, 1);
            y(j, i) = Complex(0, 1);
            basis.push_back(y);
        }
    return basis;
}

// Real symmetric traceless basis, the {iS} complement behind the SU/SO
// orbit directions.
std::vector<Eigen::MatrixXcd> sym_traceless_basis(int n) {
    std::vector<Eigen::MatrixXcd> basis;
    for (int d = 0; d + 1 < n; ++d) {
        Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
        s(d, d) = 1.0;
        s(d + 1, d + 1) = -1.0;
        basis.push_back(s);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
            s(i, j) = 1.0;
            s(j, i) = 1.0;
            basis.push_back(s);
        }
    return basis;
}

const Eigen::MatrixXcd& group_param(const ConeSpec& cone,
                                    const LinkParameter& param) {
    const auto* m = std::get_if<Eigen::MatrixXcd>(&param);
    if (m == nullptr)
        throw InvalidParameter(cone.id() + " expects a group element parameter");
    int k = cone.group_size();
    if (m->rows() != k || m->cols() != k)
        throw InvalidParameter(cone.id() + " expects a " + std::to_string(k) +
                               "x" + std::to_string(k) + " group element");
    if (!m->allFinite())
        throw InvalidParameter("group element has non-finite entries");
    if (!ComplexSquareMatrix(*m).is_special_unitary())
        throw InvalidParameter("group element is not special unitary");
    return *m;
}

const Eigen::VectorXd& angle_param(const ConeSpec& cone,
                                   const LinkParameter& param, int count) {
    const auto* a = std::get_if<Eigen::VectorXd>(&param);
    if (a == nullptr)
        throw InvalidParameter(cone.id() + " expects an angle parameter");
    if (a->size() != count)
        throw InvalidParameter(cone.id() + " expects " + std::to_string(count) +
                               " angle(s)");
    if (!a->allFinite()) throw InvalidParameter("angles must be finite");
    return *a;
}

Eigen::VectorXcd sw_point(int p, int q, double theta) {
    Eigen::VectorXcd z(2);
    double s = std::sqrt(static_cast<double>(p + q));
    z(0) = std::polar(std::sqrt(static_cast<double>(q)) / s, p * theta);
    z(1) = std::polar(std::sqrt(static_cast<double>(p)) / s,
                      kPi / 2 - q * theta);
    return z;
}

Eigen::VectorXcd sw_velocity(int p, int q, double theta) {
    Eigen::VectorXcd z(2);
    double s = std::sqrt(static_cast<double>(p + q));
    z(0) = std::polar(p * std::sqrt(static_cast<double>(q)) / s,
                      p * theta + kPi / 2);
    z(1) = std::polar(q * std::sqrt(static_cast<double>(p)) / s, -q * theta);
    return z;
}

Eigen::VectorXcd clifford_point(int n, const Eigen::VectorXd& angles) {
    Eigen::VectorXcd z(n);
    double last = 0.0;
    for (int j = 0; j + 1 < n; ++j) {
        z(j) = std::polar(1.0, angles(j));
        last -= angles(j);
    }
    z(n - 1) = std::polar(1.0, last);
    return z / std::sqrt(static_cast<double>(n));
}

// Orbit directions at the parameter, before orthonormalization. The
// spanning sets are the canonical complements: full su(n) under right
// multiplication for SuQuotient, {iS} for SuSoQuotient, and all of su(2n)
// pushed through the orbit map for SuSpQuotient (the sp(n) stabilizer
// lands on zero and gets dropped by the rank filter).
std::vector<Eigen::VectorXcd> orbit_candidates(const ConeSpec& cone,
                                               const LinkParameter& param) {
    std::vector<Eigen::VectorXcd> out;
    switch (cone.variant()) {
        case ConeVariant::SuQuotient: {
            const Eigen::MatrixXcd& a = group_param(cone, param);
            double s = std::sqrt(static_cast<double>(cone.n()));
            for (const auto& x : su_basis(cone.n()))
                out.push_back(gl_coords(a * x) / s);
            break;
        }
        case ConeVariant::SuSoQuotient: {
            const Eigen::MatrixXcd& a = group_param(cone, param);
            double s = std::sqrt(static_cast<double>(cone.n()));
            for (const auto& sym : sym_traceless_basis(cone.n()))
                out.push_back(
                    sym_coords(Complex(0, 2) * a * sym * a.transpose()) / s);
            break;
        }
        case ConeVariant::SuSpQuotient: {
            const Eigen::MatrixXcd& a = group_param(cone, param);
            int k = 2 * cone.n();
            Eigen::MatrixXcd j = j_matrix(cone.n());
            double s = std::sqrt(static_cast<double>(k));
            for (const auto& x : su_basis(k))
                out.push_back(antisym_coords(
                                  a * (x * j + j * x.transpose()) *
                                  a.transpose()) /
                              s);
            break;
        }
        case ConeVariant::SchoenWolfson: {
            double th = angle_param(cone, param, 1)(0);
            out.push_back(sw_velocity(cone.p(), cone.q(), th));
            break;
        }
        case ConeVariant::CliffordTorus: {
            int n = cone.n();
            const Eigen::VectorXd& angles = angle_param(cone, param, n - 1);
            Eigen::VectorXcd sigma = clifford_point(n, angles);
            for (int d = 0; d + 1 < n; ++d) {
                Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
                v(d) = Complex(0, 1) * sigma(d);
                v(n - 1) = Complex(0, -1) * sigma(n - 1);
                out.push_back(v);
            }
            break;
        }
    }
    return out;
}

// Modified Gram-Schmidt over the real inner product Re<u,v>, dropping
// vectors that fall below the rank threshold. Stops once `want` directions
// are found.
std::vector<Eigen::VectorXcd> mgs_collect(
    const std::vector<Eigen::VectorXcd>& candidates, int want,
    const char* what) {
    std::vector<Eigen::VectorXcd> acc;
    acc.reserve(static_cast<std::size_t>(want));
    for (const auto& v : candidates) {
        Eigen::VectorXcd w = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& a : acc) w -= std::real(a.dot(w)) * a;
        double norm = w.norm();
        if (norm > 1e-8) {
            acc.push_back(w / norm);
            if (static_cast<int>(acc.size()) == want) break;
        }
    }
    if (static_cast<int>(acc.size()) < want) throw DegenerateFrame(what);
    return acc;
}

RealFrame assemble_frame(int ambient, std::vector<Eigen::VectorXcd> dirs,
                         Eigen::VectorXcd last, const char* what) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& a : dirs) last -= std::real(a.dot(last)) * a;
    double norm = last.norm();
    if (norm < 0.5) throw DegenerateFrame(what);
    RealFrame frame(ambient);
    for (const auto& d : dirs) frame.append_complex(d);
    frame.append_complex(last / norm);
    return frame;
}

}  // namespace

ConeSpec ConeSpec::su(int n) {
    if (n < 2) throw InvalidParameter("su cone needs n >= 2");
    return ConeSpec(ConeVariant::SuQuotient, n, 0);
}

ConeSpec ConeSpec::su_so(int n) {
    if (n < 2) throw InvalidParameter("su-so cone needs n >= 2");
    return ConeSpec(ConeVariant::SuSoQuotient, n, 0);
}

ConeSpec ConeSpec::su_sp(int n) {
    if (n < 2) throw InvalidParameter("su-sp cone needs n >= 2");
    return ConeSpec(ConeVariant::SuSpQuotient, n, 0);
}

ConeSpec ConeSpec::schoen_wolfson(int p, int q) {
    if (p < 1 || q < 1)
        throw InvalidParameter("winding pair must be positive");
    if (std::gcd(p, q) != 1)
        throw InvalidParameter("winding pair must be coprime");
    return ConeSpec(ConeVariant::SchoenWolfson, p, q);
}

ConeSpec ConeSpec::clifford_torus(int n) {
    if (n < 2) throw InvalidParameter("clifford cone needs n >= 2");
    return ConeSpec(ConeVariant::CliffordTorus, n, 0);
}

int ConeSpec::ambient_dimension() const { return ambient_dim(variant_, a_); }

bool ConeSpec::is_special_lagrangian() const {
    return variant_ != ConeVariant::SchoenWolfson || a_ == b_;
}

int ConeSpec::group_size() const {
    switch (variant_) {
        case ConeVariant::SuQuotient:
        case ConeVariant::SuSoQuotient:
            return a_;
        case ConeVariant::SuSpQuotient:
            return 2 * a_;
        default:
            return 0;
    }
}

std::string ConeSpec::id() const {
    switch (variant_) {
        case ConeVariant::SuQuotient:
            return "su(" + std::to_string(a_) + ")";
        case ConeVariant::SuSoQuotient:
            return "su-so(" + std::to_string(a_) + ")";
        case ConeVariant::SuSpQuotient:
            return "su-sp(" + std::to_string(a_) + ")";
        case ConeVariant::SchoenWolfson:
            return "sw(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
        case ConeVariant::CliffordTorus:
            return "clifford(" + std::to_string(a_) + ")";
    }
    return "?";
}

std::optional<std::string> ConeSpec::smoothability_note() const {
    if (!is_group_variant(variant_)) return std::nullopt;
    if (variant_ == ConeVariant::SuQuotient && a_ == 2) return std::nullopt;
    return "catalog: the equivariant smoothing problem with decay is not "
           "solvable for this cone";
}

std::optional<std::string> ConeSpec::advisory() const {
    if (variant_ == ConeVariant::SuQuotient && a_ == 2)
        return "su(2) is a flat Lagrangian plane, below the catalogued range "
               "n >= 3; results are exploratory";
    return std::nullopt;
}

LinkParameter random_link_parameter(const ConeSpec& cone, Rng& rng) {
    switch (cone.variant()) {
        case ConeVariant::SuQuotient:
        case ConeVariant::SuSoQuotient:
        case ConeVariant::SuSpQuotient: {
            int k = cone.group_size();
            Eigen::MatrixXcd g(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) g(i, j) = rng.complex_gauss();
            Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
            Eigen::MatrixXcd q = qr.householderQ();
            Eigen::VectorXcd diag = qr.matrixQR().diagonal();
            for (int j = 0; j < k; ++j) {
                double a = std::abs(diag(j));
                if (a > 0) q.col(j) *= diag(j) / a;
            }
            q.col(0) /= q.determinant();
            return q;
        }
        case ConeVariant::SchoenWolfson: {
            Eigen::VectorXd a(1);
            a(0) = rng.uniform(0.0, 2.0 * kPi);
            return a;
        }
        case ConeVariant::CliffordTorus: {
            Eigen::VectorXd a(cone.n() - 1);
            for (int j = 0; j < a.size(); ++j)
                a(j) = rng.uniform(0.0, 2.0 * kPi);
            return a;
        }
    }
    throw InvalidArgument("unknown cone variant");
}

Eigen::VectorXcd sample_link_point(const ConeSpec& cone,
                                   const LinkParameter& param) {
    switch (cone.variant()) {
        case ConeVariant::SuQuotient: {
            const Eigen::MatrixXcd& a = group_param(cone, param);
            return gl_coords(a) / std::sqrt(static_cast<double>(cone.n()));
        }
        case ConeVariant::SuSoQuotient: {
            const Eigen::MatrixXcd& a = group_param(cone, param);
            return sym_coords(a * a.transpose()) /
                   std::sqrt(static_cast<double>(cone.n()));
        }
        case ConeVariant::SuSpQuotient: {
            const Eigen::MatrixXcd& a = group_param(cone, param);
            Eigen::MatrixXcd j = j_matrix(cone.n());
            return antisym_coords(a * j * a.transpose()) /
                   std::sqrt(static_cast<double>(2 * cone.n()));
        }
        case ConeVariant::SchoenWolfson: {
            double th = angle_param(cone, param, 1)(0);
            return sw_point(cone.p(), cone.q(), th);
        }
        case ConeVariant::CliffordTorus: {
            const Eigen::VectorXd& angles =
                angle_param(cone, param, cone.n() - 1);
            return clifford_point(cone.n(), angles);
        }
    }
    throw InvalidArgument("unknown cone variant");
}

RealFrame tangent_frame(const ConeSpec& cone, const LinkParameter& param) {
    Eigen::VectorXcd point = sample_link_point(cone, param);
    int ambient = cone.ambient_dimension();
    auto dirs = mgs_collect(orbit_candidates(cone, param), ambient - 1,
                            "orbit directions do not span the link tangent");
    return assemble_frame(ambient, std::move(dirs), point,
                          "radial direction collapsed onto the orbit");
}

std::string to_string(ConeVerdict v) {
    switch (v) {
        case ConeVerdict::SpecialLagrangian:
            return "SpecialLagrangian";
        case ConeVerdict::LagrangianOnly:
            return "LagrangianOnly";
        case ConeVerdict::NotLagrangian:
            return "NotLagrangian";
    }
    return "?";
}

ConeReport verify_cone(const ConeSpec& cone, int samples, double tol,
                       std::uint64_t seed) {
    if (samples < 10)
        throw InvalidArgument("verify_cone needs at least 10 samples");
    if (!(tol > 0) || !std::isfinite(tol))
        throw InvalidArgument("tolerance must be positive");
    int ambient = cone.ambient_dimension();
    Rng rng(seed);
    ConeReport rep;
    std::vector<Complex> phases;
    phases.reserve(static_cast<std::size_t>(samples));
    bool lagrangian = true;
    for (int s = 0; s < samples; ++s) {
        LinkParameter param = random_link_parameter(cone, rng);
        Eigen::VectorXcd point = sample_link_point(cone, param);
        RealFrame frame = tangent_frame(cone, param);
        rep.sphere_residual =
            std::max(rep.sphere_residual, std::abs(point.norm() - 1.0));
        RealFrame link(ambient);
        for (int i = 0; i + 1 < ambient; ++i)
            link.append(frame.vector(i));
        rep.legendrian_residual = std::max(rep.legendrian_residual,
                                           legendrian_residual(point, link));
        rep.isotropy_residual =
            std::max(rep.isotropy_residual, isotropy_residual(point, frame));
        try {
            phases.push_back(phase(point, frame));
        } catch (const NotLagrangian&) {
            lagrangian = false;
        }
    }
    if (!phases.empty()) {
        Complex mean = 0;
        for (Complex ph : phases) mean += ph;
        mean /= static_cast<double>(phases.size());
        double var = 0.0;
        for (Complex ph : phases) var += std::norm(ph - mean);
        rep.phase_mean = mean;
        rep.phase_stddev = std::sqrt(var / static_cast<double>(phases.size()));
    }
    bool residuals_ok = rep.sphere_residual <= tol &&
                        rep.legendrian_residual <= tol &&
                        rep.isotropy_residual <= tol;
    if (lagrangian && residuals_ok && rep.phase_stddev <= tol)
        rep.verdict = ConeVerdict::SpecialLagrangian;
    else if (lagrangian && rep.isotropy_residual <= tol)
        rep.verdict = ConeVerdict::LagrangianOnly;
    else
        rep.verdict = ConeVerdict::NotLagrangian;
    return rep;
}

std::vector<HermQuad> symmetry_generators(const ConeSpec& cone) {
    int ambient = cone.ambient_dimension();
    std::vector<HermQuad> out;
    auto push_field = [&](const Eigen::MatrixXcd& xhat) {
        // Moment of the linear field z -> xhat z, for skew-Hermitian
        // traceless xhat: f(z) = -1/2 Im <z, xhat z>.
        out.emplace_back(0.0, Eigen::VectorXcd::Zero(ambient),
                         (Complex(0, 0.5) * xhat.transpose()).eval());
    };
    switch (cone.variant()) {
        case ConeVariant::SuQuotient:
        case ConeVariant::SuSoQuotient:
        case ConeVariant::SuSpQuotient: {
            int k = cone.group_size();
            bool conjugated = cone.variant() != ConeVariant::SuQuotient;
            for (const auto& x : su_basis(k)) {
                Eigen::MatrixXcd xhat(ambient, ambient);
                for (int c = 0; c < ambient; ++c) {
                    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(ambient);
                    e(c) = 1.0;
                    Eigen::MatrixXcd b, acted;
                    if (cone.variant() == ConeVariant::SuQuotient)
                        b = gl_matrix(k, e);
                    else if (cone.variant() == ConeVariant::SuSoQuotient)
                        b = sym_matrix(k, e);
                    else
                        b = antisym_matrix(k, e);
                    acted = conjugated ? (x * b + b * x.transpose()).eval()
                                       : (x * b).eval();
                    if (cone.variant() == ConeVariant::SuQuotient)
                        xhat.col(c) = gl_coords(acted);
                    else if (cone.variant() == ConeVariant::SuSoQuotient)
                        xhat.col(c) = sym_coords(acted);
                    else
                        xhat.col(c) = antisym_coords(acted);
                }
                push_field(xhat);
            }
            break;
        }
        case ConeVariant::SchoenWolfson: {
            if (cone.p() != cone.q()) break;
            Eigen::MatrixXcd xhat = Eigen::MatrixXcd::Zero(2, 2);
            xhat(0, 0) = Complex(0, cone.p());
            xhat(1, 1) = Complex(0, -cone.q());
            push_field(xhat);
            break;
        }
        case ConeVariant::CliffordTorus: {
            int n = cone.n();
            for (int d = 0; d + 1 < n; ++d) {
                Eigen::MatrixXcd xhat = Eigen::MatrixXcd::Zero(n, n);
                xhat(d, d) = Complex(0, 1);
                xhat(d + 1, d + 1) = Complex(0, -1);
                push_field(xhat);
            }
            break;
        }
    }
    return out;
}

double moment_level_check(const ConeSpec& cone,
                          const std::vector<HermQuad>& generators,
                          int samples, std::uint64_t seed) {
    if (generators.empty())
        throw InvalidArgument("moment_level_check needs generators");
    if (samples < 1)
        throw InvalidArgument("moment_level_check needs samples >= 1");
    int ambient = cone.ambient_dimension();
    for (const auto& g : generators)
        if (g.n() != ambient)
            throw DimensionMismatch("generator dimension does not match cone");
    Rng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXcd z =
            sample_link_point(cone, random_link_parameter(cone, rng));
        for (const auto& g : generators)
            worst = std::max(worst, std::abs(g.value(z)));
    }
    return worst;
}

int link_loop_directions(const ConeSpec& cone) {
    switch (cone.variant()) {
        case ConeVariant::SchoenWolfson:
            return 1;
        case ConeVariant::CliffordTorus:
            return cone.n();
        default:
            return cone.group_size();
    }
}

LoopTrace link_loop(const ConeSpec& cone, int direction, int segments,
                    bool with_frames) {
    if (direction < 0 || direction >= link_loop_directions(cone))
        throw InvalidArgument("link loop direction out of range");
    int ambient = cone.ambient_dimension();
    auto parameter_at = [cone, direction](double th) -> LinkParameter {
        switch (cone.variant()) {
            case ConeVariant::SchoenWolfson: {
                Eigen::VectorXd a(1);
                a(0) = th;
                return a;
            }
            case ConeVariant::CliffordTorus: {
                Eigen::VectorXd a = Eigen::VectorXd::Zero(cone.n() - 1);
                if (direction + 1 < cone.n())
                    a(direction) = th;
                else
                    a.setConstant(th);
                return a;
            }
            default: {
                int k = cone.group_size();
                Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(k, k);
                if (direction + 1 < k) {
                    g(direction, direction) = std::polar(1.0, th);
                    g(direction + 1, direction + 1) = std::polar(1.0, -th);
                } else {
                    for (int d = 0; d + 1 < k; ++d)
                        g(d, d) = std::polar(1.0, th);
                    g(k - 1, k - 1) = std::polar(1.0, -(k - 1) * th);
                }
                return g;
            }
        }
    };
    return LoopTrace::from_sampler(
        [cone, ambient, with_frames, parameter_at](double th) {
            LinkParameter param = parameter_at(th);
            Eigen::VectorXcd point = sample_link_point(cone, param);
            RealFrame frame = with_frames ? tangent_frame(cone, param)
                                          : RealFrame(ambient);
            return LoopTrace::Sample{std::move(point), std::move(frame)};
        },
        segments);
}

SmoothingFamily::SmoothingFamily(ConeSpec base, double t)
    : base_(std::move(base)), t_(t) {
    if (!std::isfinite(t)) throw InvalidArgument("level parameter must be finite");
}

double smoothing_angle(const SmoothingFamily& family, double r, int branch) {
    if (!(r > 0) || !std::isfinite(r))
        throw InvalidArgument("radius must be positive");
    if (branch != 0 && branch != 1)
        throw InvalidArgument("branch must be 0 or 1");
    int n = family.n();
    double t = family.t();
    if (t <= 0)
        throw NoBranchSolution(
            "level parameter must be positive for an interior branch");
    double rn = std::pow(r, n);
    if (rn < t)
        throw NoBranchSolution("radius below the waist of the level set");
    // Bisection on r^n sin(n a) = t. This form keeps full relative accuracy
    // at r^n >> t, where expanding Im z^n in Cartesian parts would cancel.
    auto g = [&](double a) { return rn * std::sin(n * a) - t; };
    double lo = branch == 0 ? 0.0 : kPi / n;          // g <= 0 side
    double hi = kPi / (2.0 * n);                      // g >= 0 side
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (g(mid) <= 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Eigen::VectorXcd smoothing_point(const SmoothingFamily& family, double r,
                                 int branch, const LinkParameter& param) {
    Complex z = std::polar(r, smoothing_angle(family, r, branch));
    return z * sample_link_point(family.base(), param);
}

RealFrame smoothing_frame(const SmoothingFamily& family, double r, int branch,
                          const LinkParameter& param) {
    double alpha = smoothing_angle(family, r, branch);
    Complex rot = std::polar(1.0, alpha);
    int n = family.n();
    RealFrame cone_frame = tangent_frame(family.base(), param);
    std::vector<Eigen::VectorXcd> dirs;
    dirs.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 0; i + 1 < n; ++i)
        dirs.push_back(rot * cone_frame.complex_vector(i));
    // Curve direction taken with respect to s = Re z^n, which parametrizes
    // the whole level curve through both branches: dz/ds is a positive real
    // multiple of z^{1-n}. Unlike dz/dr this stays defined at the waist and
    // keeps one coherent orientation, so the frame phase cannot flip sign
    // between the two ends.
    Complex curve_dir = std::polar(1.0, -(n - 1) * alpha);
    return assemble_frame(n, std::move(dirs),
                          curve_dir * cone_frame.complex_vector(n - 1),
                          "level-set curve direction collapsed");
}

double decay_rate_fit(const SmoothingFamily& family,
                      const std::vector<double>& radii, std::uint64_t seed) {
    if (radii.size() < 5)
        throw InsufficientRange("decay fit needs at least 5 radii");
    double lo = radii[0], hi = radii[0];
    for (double r : radii) {
        if (!(r > 0) || !std::isfinite(r))
            throw InvalidArgument("radii must be positive");
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    if (hi / lo < 99.9999)
        throw InsufficientRange("radii must span at least two decades");
    int n = family.n();
    Rng rng(seed);
    Eigen::VectorXcd sigma =
        sample_link_point(family.base(), random_link_parameter(family.base(), rng));
    Eigen::VectorXcd rotated = std::polar(1.0, kPi / n) * sigma;
    auto ray_distance = [](const Eigen::VectorXcd& w,
                           const Eigen::VectorXcd& unit) {
        double proj = std::max(0.0, std::real(unit.dot(w)));
        return (w - proj * unit).norm();
    };
    std::vector<double> xs, ys;
    xs.reserve(radii.size());
    ys.reserve(radii.size());
    for (double r : radii) {
        Eigen::VectorXcd w =
            std::polar(r, smoothing_angle(family, r, 0)) * sigma;
        double d = std::min(ray_distance(w, sigma), ray_distance(w, rotated));
        xs.push_back(std::log(r));
        ys.push_back(std::log(d));
    }
    double xbar = 0, ybar = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= static_cast<double>(xs.size());
    ybar /= static_cast<double>(xs.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - xbar) * (ys[i] - ybar);
        den += (xs[i] - xbar) * (xs[i] - xbar);
    }
    return num / den;
}

}  // namespace slaglab
