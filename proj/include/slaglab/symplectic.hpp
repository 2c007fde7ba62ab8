#pragma once

// Numerical symplectic and contact geometry of complex Euclidean space:
// the standard forms, isotropy and Legendrian residuals, the phase of an
// oriented Lagrangian plane, Maslov winding of a loop of such planes,
// Liouville loop integrals with error control, Hamiltonian fields of
// Hermitian quadratics, and the pointwise closure test for the contracted
// volume form.
//
// Points in C^n are complex n-vectors. Real tangent vectors use the
// interleaved packing of RealFrame: (x_1, y_1, ..., x_n, y_n), so the
// complex reading of slot j is v(2j) + i v(2j+1).

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "slaglab/cxmat.hpp"
#include "slaglab/errors.hpp"

namespace slaglab {

// The fixed ambient structure on C^n. omega is the symplectic form
// sum_j dx_j ^ dy_j. The Liouville primitive used here is
// lambda = (1/2) sum_j (x_j dy_j - y_j dx_j), so d(lambda) = omega.
// The contact form on the unit sphere is the unhalved
// gamma = sum_j (x_j dy_j - y_j dx_j); note gamma = 2 lambda, a factor kept
// deliberately so that each form matches its usual normalization.
class AmbientForms {
  public:
    explicit AmbientForms(int n);

    int n() const { return n_; }

    // Interleaved real 2n-vectors.
    double omega(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
    // Complex packing: omega(u, v) = Im(conj(u) . v).
    double omega(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;

    double liouville(const Eigen::VectorXcd& point, const Eigen::VectorXcd& v) const;
    double contact(const Eigen::VectorXcd& point, const Eigen::VectorXcd& v) const;

    // Holomorphic volume form dz_1 ^ ... ^ dz_n on an n-vector frame,
    // i.e. the complex determinant of the frame columns.
    Complex volume(const RealFrame& frame) const;

  private:
    int n_;
};

// max_{i<j} |omega(v_i, v_j)| over the frame vectors: zero exactly on
// isotropic planes. The frame needs at least two vectors and must live in
// the same ambient space as the point.
double isotropy_residual(const Eigen::VectorXcd& point, const RealFrame& frame);

// max_i |gamma(point)(v_i)|, the failure of the frame to be tangent to the
// contact distribution. Throws NotOnSphere unless |point| = 1 within 1e-8.
double legendrian_residual(const Eigen::VectorXcd& point, const RealFrame& frame);

// Phase e^{i theta} of an oriented Lagrangian n-plane given by an
// orthonormal frame: the holomorphic volume form evaluated on the frame.
// Throws NotLagrangian when the isotropy residual exceeds tol, and
// InvalidArgument when the frame is not orthonormal (the determinant would
// not be unimodular). Swapping two frame vectors negates the result; even
// permutations leave it fixed.
Complex phase(const Eigen::VectorXcd& point, const RealFrame& frame,
              double tol = 1e-8);

// A closed loop of points with (optionally) a tangent n-frame at each
// sample, on the uniform grid theta_k = 2 pi k / m, k = 0..m. The first and
// last samples coincide. When built from a sampler the trace can refine
// itself, which maslov_index uses to keep phase steps small.
class LoopTrace {
  public:
    struct Sample {
        Eigen::VectorXcd point;
        RealFrame frame;

        Sample() : frame(1) {}
        Sample(Eigen::VectorXcd p, RealFrame f)
            : point(std::move(p)), frame(std::move(f)) {}
    };
    using Sampler = std::function<Sample(double)>;

    // Explicit closed sample list: samples.front() and samples.back() must
    // agree to 1e-9 relative, else NotClosed. Needs at least 4 segments.
    explicit LoopTrace(std::vector<Sample> samples);

    // Samples theta = 2 pi k / m for k = 0..m and re-checks closure by
    // comparing the endpoint samples.
    static LoopTrace from_sampler(Sampler sampler, int segments);

    int segments() const { return static_cast<int>(samples_.size()) - 1; }
    int ambient_n() const;
    const Sample& at(int k) const;

    bool refinable() const { return sampler_.has_value(); }
    // Doubled sample count via the stored sampler; InvalidArgument without one.
    LoopTrace refined() const;

  private:
    LoopTrace() = default;
    void validate_closed() const;

    std::vector<Sample> samples_;
    std::optional<Sampler> sampler_;
};

struct LiouvilleResult {
    double value = 0.0;
    double error_estimate = 0.0;  // Richardson estimate from grid halving
    bool exact = false;           // |value| <= 10 * error_estimate + 1e-12
};

// Quadrature of the Liouville loop integral over the trace polygon, using
// the midpoint-secant rule (second order, exact on straight segments).
// Needs at least 64 segments, and an even count for the embedded
// half-resolution pass behind the error estimate.
LiouvilleResult loop_liouville_integral(const LoopTrace& loop);

// Winding number of the Lagrangian phase along the loop, by continuous
// unwrapping of arg applied to consecutive phase ratios. Every sample frame
// is orthonormalized first. When a single step turns the phase by pi/2 or
// more the trace is refined (sample count doubles, up to 2^20 segments);
// RefinementExhausted if the loop cannot be refined or the cap is hit.
long long maslov_index(const LoopTrace& loop);

// Real-valued function on C^n of the shape
//   f(z) = c + sum_i (b_i z_i + conj(b_i z_i)) + sum_{ij} a_ij z_i conj(z_j)
// with a Hermitian. Covers linear (translation) moments and quadratic
// moments in one type.
class QuadraticFn {
  public:
    QuadraticFn(double c, Eigen::VectorXcd b, Eigen::MatrixXcd a);

    int n() const { return static_cast<int>(b_.size()); }
    double c() const { return c_; }
    const Eigen::VectorXcd& b() const { return b_; }
    const Eigen::MatrixXcd& a() const { return a_; }

    double value(const Eigen::VectorXcd& z) const;

  private:
    double c_;
    Eigen::VectorXcd b_;
    Eigen::MatrixXcd a_;
};

// The harmonic case: a additionally traceless (so f is harmonic as a
// function on R^{2n}). Construction rejects a nonzero trace.
class HermQuad : public QuadraticFn {
  public:
    HermQuad(double c, Eigen::VectorXcd b, Eigen::MatrixXcd a);

    static HermQuad constant(int n, double c);
    // f = x_k respectively f = y_k (0-based slot k).
    static HermQuad coordinate_re(int n, int k);
    static HermQuad coordinate_im(int n, int k);
};

// Hamiltonian field X_f = -J grad f. In complex packing
// grad f = 2 (conj(b) + a^T z), hence X_f = -2i (conj(b) + a^T z); the
// real overload returns the interleaved 2n-vector. Satisfies
// df(v) = omega(X_f, v) identically.
Eigen::VectorXcd hamiltonian_field_complex(const QuadraticFn& f,
                                           const Eigen::VectorXcd& z);
Eigen::VectorXd hamiltonian_field(const QuadraticFn& f, const Eigen::VectorXcd& z);

// A scalar-valued (n-1)-form presented as a callable: given a point and an
// ascending list of n-1 coordinate directions (0..2n-1 in interleaved
// order), return the form value on those directions.
using CoordinateForm =
    std::function<double(const Eigen::VectorXcd&, const std::vector<int>&)>;

// Central finite-difference exterior derivative of an (n-1)-form on the
// given ascending n-tuple of coordinate directions:
//   d eta(u_1..u_n) = sum_i (-1)^{i+1} D_{u_i} [eta(.., u_i omitted, ..)].
// Constant coordinate fields make the bracket terms vanish, so this is the
// full exterior derivative, accurate to O(h^2).
double exterior_derivative_fd(const CoordinateForm& eta, int n,
                              const Eigen::VectorXcd& z,
                              const std::vector<int>& tuple, double h);

// Pointwise closure residual of the contracted volume form
// eta = iota_{X_f} Im(volume): the maximum of |d eta| over all ascending
// coordinate n-tuples, via exterior_derivative_fd. Vanishes (up to
// roundoff; the integrand is affine in z, so central differences are exact
// and no O(h^2) tail survives) precisely when f is a harmonic Hermitian
// quadratic. Supported for n in {2, 3, 4}.
double fu_condition_residual(const QuadraticFn& f, const Eigen::VectorXcd& z,
                             double h);

// The n(n+2) moment generators: the constant 1, the 2n coordinate
// functions x_k, y_k, then a trace-orthogonal basis of the quadratic
// moments (diagonal differences, symmetric pairs, antisymmetric pairs), in
// that order.
std::vector<HermQuad> moment_basis(int n);

// One quadrature node of a closed (n-1)-dimensional surface: the point,
// the n-1 raw parametric tangent vectors (not orthonormalized), and the
// parameter-cell weight.
struct SurfaceSample {
    Eigen::VectorXcd point;
    RealFrame tangents;
    double weight = 0.0;

    SurfaceSample() : tangents(1) {}
    SurfaceSample(Eigen::VectorXcd p, RealFrame t, double w)
        : point(std::move(p)), tangents(std::move(t)), weight(w) {}
};

// For each basis function f, the quadrature value of
// integral over the surface of iota_{X_f} Im(volume),
// i.e. sum_s w_s Im volume(X_f(p_s), t_1(s), .., t_{n-1}(s)). Summation is
// sequential in sample order for reproducibility.
std::vector<double> sl_moment_residuals(const std::vector<SurfaceSample>& samples,
                                        const std::vector<HermQuad>& basis);

}  // namespace slaglab
