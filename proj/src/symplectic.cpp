#include "slaglab/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slaglab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSphereTol = 1e-8;

// Complex packing of the real coordinate direction d in {0..2n-1}:
// even d is the x-direction of slot d/2, odd d the y-direction.
Eigen::VectorXcd coordinate_direction(int n, int d) {
    if (d < 0 || d >= 2 * n) throw OutOfRange("coordinate direction out of range");
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
    e(d / 2) = (d % 2 == 0) ? Complex(1, 0) : Complex(0, 1);
    return e;
}

}  // namespace

AmbientForms::AmbientForms(int n) : n_(n) {
    if (n < 1) throw InvalidArgument("ambient dimension must be at least 1");
}

double AmbientForms::omega(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    if (u.size() != 2 * n_ || v.size() != 2 * n_)
        throw DimensionMismatch("omega expects interleaved 2n-vectors");
    double acc = 0.0;
    for (int j = 0; j < n_; ++j)
        acc += u(2 * j) * v(2 * j + 1) - u(2 * j + 1) * v(2 * j);
    return acc;
}

double AmbientForms::omega(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const {
    if (u.size() != n_ || v.size() != n_)
        throw DimensionMismatch("omega expects complex n-vectors");
    return std::imag(u.dot(v));  // Eigen's dot conjugates the left factor
}

double AmbientForms::liouville(const Eigen::VectorXcd& point,
                               const Eigen::VectorXcd& v) const {
    return 0.5 * omega(point, v);
}

double AmbientForms::contact(const Eigen::VectorXcd& point,
                             const Eigen::VectorXcd& v) const {
    return omega(point, v);
}

Complex AmbientForms::volume(const RealFrame& frame) const {
    if (frame.ambient_n() != n_)
        throw DimensionMismatch("frame lives in a different ambient space");
    return complex_determinant(frame);
}

double isotropy_residual(const Eigen::VectorXcd& point, const RealFrame& frame) {
    if (frame.ambient_n() != point.size())
        throw DimensionMismatch("point and frame ambient dimensions differ");
    if (frame.size() < 2)
        throw InvalidArgument("isotropy residual needs at least two frame vectors");
    AmbientForms forms(frame.ambient_n());
    double worst = 0.0;
    for (int i = 0; i < frame.size(); ++i)
        for (int j = i + 1; j < frame.size(); ++j)
            worst = std::max(worst, std::abs(forms.omega(frame.complex_vector(i),
                                                         frame.complex_vector(j))));
    return worst;
}

double legendrian_residual(const Eigen::VectorXcd& point, const RealFrame& frame) {
    if (frame.ambient_n() != point.size())
        throw DimensionMismatch("point and frame ambient dimensions differ");
    if (std::abs(point.norm() - 1.0) > kSphereTol)
        throw NotOnSphere("point is not on the unit sphere");
    AmbientForms forms(frame.ambient_n());
    double worst = 0.0;
    for (int i = 0; i < frame.size(); ++i)
        worst = std::max(worst,
                         std::abs(forms.contact(point, frame.complex_vector(i))));
    return worst;
}

Complex phase(const Eigen::VectorXcd& point, const RealFrame& frame, double tol) {
    if (frame.size() != frame.ambient_n())
        throw DimensionMismatch("phase needs a full n-vector frame");
    if (isotropy_residual(point, frame) > tol)
        throw NotLagrangian("frame does not span a Lagrangian plane");
    Complex det = complex_determinant(frame);
    if (std::abs(std::abs(det) - 1.0) > 1e-6)
        throw InvalidArgument("phase needs an orthonormal frame");
    return det;
}

// ---------------------------------------------------------------------------
// Loops

LoopTrace::LoopTrace(std::vector<Sample> samples) {
    samples_ = std::move(samples);
    if (samples_.size() < 5)
        throw InvalidArgument("a loop trace needs at least 4 segments");
    for (const auto& s : samples_)
        if (s.point.size() != samples_[0].point.size())
            throw DimensionMismatch("loop samples live in different ambient spaces");
    validate_closed();
}

void LoopTrace::validate_closed() const {
    const Eigen::VectorXcd& first = samples_.front().point;
    const Eigen::VectorXcd& last = samples_.back().point;
    double scale = std::max({first.norm(), last.norm(), 1.0});
    if ((first - last).norm() > 1e-9 * scale)
        throw NotClosed("loop endpoints differ");
}

LoopTrace LoopTrace::from_sampler(Sampler sampler, int segments) {
    if (segments < 4) throw InvalidArgument("a loop trace needs at least 4 segments");
    LoopTrace trace;
    trace.samples_.reserve(static_cast<std::size_t>(segments) + 1);
    for (int k = 0; k < segments; ++k)
        trace.samples_.push_back(sampler(2.0 * kPi * k / segments));

    // The sampler must be 2 pi periodic; verify, then close the polygon
    // with an exact copy of the first sample.
    Sample wrap = sampler(2.0 * kPi);
    double scale = std::max(trace.samples_[0].point.norm(), 1.0);
    if ((wrap.point - trace.samples_[0].point).norm() > 1e-9 * scale)
        throw NotClosed("sampler is not 2 pi periodic");
    trace.samples_.push_back(trace.samples_[0]);
    trace.sampler_ = std::move(sampler);
    return trace;
}

int LoopTrace::ambient_n() const {
    return static_cast<int>(samples_[0].point.size());
}

const LoopTrace::Sample& LoopTrace::at(int k) const {
    if (k < 0 || k >= static_cast<int>(samples_.size()))
        throw OutOfRange("loop sample index out of range");
    return samples_[static_cast<std::size_t>(k)];
}

LoopTrace LoopTrace::refined() const {
    if (!sampler_) throw InvalidArgument("loop trace has no sampler to refine with");
    return from_sampler(*sampler_, 2 * segments());
}

LiouvilleResult loop_liouville_integral(const LoopTrace& loop) {
    int m = loop.segments();
    if (m < 64) throw InvalidArgument("Liouville quadrature needs at least 64 segments");
    if (m % 2 != 0)
        throw InvalidArgument("Liouville quadrature needs an even segment count");

    AmbientForms forms(loop.ambient_n());
    auto integrate = [&](int stride) {
        double acc = 0.0;
        for (int k = 0; k + stride <= m; k += stride) {
            const Eigen::VectorXcd& a = loop.at(k).point;
            const Eigen::VectorXcd& b = loop.at(k + stride).point;
            acc += forms.liouville(0.5 * (a + b), b - a);
        }
        return acc;
    };

    LiouvilleResult result;
    result.value = integrate(1);
    // The rule is second order; comparing with the half-resolution pass
    // gives the usual Richardson error estimate.
    result.error_estimate = std::abs(result.value - integrate(2)) / 3.0;
    result.exact = std::abs(result.value) <= 10.0 * result.error_estimate + 1e-12;
    return result;
}

long long maslov_index(const LoopTrace& loop) {
    constexpr int kMaxSegments = 1 << 20;
    LoopTrace current = loop;
    for (;;) {
        int m = current.segments();
        int n = current.ambient_n();

        bool jump_too_large = false;
        double total = 0.0;
        Complex prev;
        for (int k = 0; k <= m; ++k) {
            const LoopTrace::Sample& s = current.at(k);
            if (s.frame.size() != n)
                throw InvalidArgument("every loop sample needs an n-vector frame");
            RealFrame orth = s.frame.orthonormalized();
            if (isotropy_residual(s.point, orth) > 1e-6)
                throw NotLagrangian("loop sample is not Lagrangian");
            Complex ph = complex_determinant(orth);
            if (k > 0) {
                double step = std::arg(ph / prev);
                if (std::abs(step) >= kPi / 2) {
                    jump_too_large = true;
                    break;
                }
                total += step;
            }
            prev = ph;
        }

        if (!jump_too_large) {
            double winding = total / (2.0 * kPi);
            double nearest = std::round(winding);
            if (std::abs(winding - nearest) < 0.25)
                return static_cast<long long>(nearest);
        }
        if (!current.refinable() || 2 * m > kMaxSegments)
            throw RefinementExhausted(
                "phase steps stay too large; cannot refine the loop further");
        current = current.refined();
    }
}

// ---------------------------------------------------------------------------
// Hermitian quadratics and their Hamiltonian fields

QuadraticFn::QuadraticFn(double c, Eigen::VectorXcd b, Eigen::MatrixXcd a)
    : c_(c), b_(std::move(b)), a_(std::move(a)) {
    if (a_.rows() != a_.cols() || a_.rows() != b_.size())
        throw DimensionMismatch("quadratic coefficient shapes disagree");
    double scale = 1.0 + a_.cwiseAbs().maxCoeff();
    if ((a_ - a_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InvalidArgument("quadratic coefficient matrix must be Hermitian");
    a_ = 0.5 * (a_ + a_.adjoint().eval());  // exact Hermitian symmetrization
}

double QuadraticFn::value(const Eigen::VectorXcd& z) const {
    if (z.size() != b_.size()) throw DimensionMismatch("point dimension mismatch");
    Complex linear = (b_.array() * z.array()).sum();
    Complex quad = z.cwiseProduct(a_ * z.conjugate()).sum();
    return c_ + 2.0 * std::real(linear) + std::real(quad);
}

HermQuad::HermQuad(double c, Eigen::VectorXcd b, Eigen::MatrixXcd a)
    : QuadraticFn(c, std::move(b), std::move(a)) {
    double scale = 1.0 + this->a().cwiseAbs().maxCoeff();
    if (std::abs(this->a().trace()) > 1e-12 * scale)
        throw InvalidArgument("harmonic quadratic must have traceless matrix part");
}

HermQuad HermQuad::constant(int n, double c) {
    return HermQuad(c, Eigen::VectorXcd::Zero(n), Eigen::MatrixXcd::Zero(n, n));
}

HermQuad HermQuad::coordinate_re(int n, int k) {
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
    b(k) = 0.5;
    return HermQuad(0.0, std::move(b), Eigen::MatrixXcd::Zero(n, n));
}

HermQuad HermQuad::coordinate_im(int n, int k) {
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
    b(k) = Complex(0, -0.5);
    return HermQuad(0.0, std::move(b), Eigen::MatrixXcd::Zero(n, n));
}

Eigen::VectorXcd hamiltonian_field_complex(const QuadraticFn& f,
                                           const Eigen::VectorXcd& z) {
    if (z.size() != f.n()) throw DimensionMismatch("point dimension mismatch");
    return Complex(0, -2) * (f.b().conjugate() + f.a().transpose() * z);
}

Eigen::VectorXd hamiltonian_field(const QuadraticFn& f, const Eigen::VectorXcd& z) {
    Eigen::VectorXcd x = hamiltonian_field_complex(f, z);
    Eigen::VectorXd out(2 * x.size());
    for (int j = 0; j < x.size(); ++j) {
        out(2 * j) = std::real(x(j));
        out(2 * j + 1) = std::imag(x(j));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Finite-difference closure of contracted volume forms

double exterior_derivative_fd(const CoordinateForm& eta, int n,
                              const Eigen::VectorXcd& z,
                              const std::vector<int>& tuple, double h) {
    if (h <= 0) throw InvalidArgument("step size must be positive");
    if (static_cast<int>(tuple.size()) != n)
        throw DimensionMismatch("tuple must list n coordinate directions");

    double acc = 0.0;
    double sign = 1.0;
    std::vector<int> rest(tuple.size() - 1);
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        rest.clear();
        for (std::size_t j = 0; j < tuple.size(); ++j)
            if (j != i) rest.push_back(tuple[j]);
        Eigen::VectorXcd step = h * coordinate_direction(n, tuple[i]);
        acc += sign * (eta(z + step, rest) - eta(z - step, rest)) / (2.0 * h);
        sign = -sign;
    }
    return acc;
}

namespace {

// Ascending k-subsets of {0..count-1}.
std::vector<std::vector<int>> ascending_subsets(int count, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(pick);
        int i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == count - k + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

}  // namespace

double fu_condition_residual(const QuadraticFn& f, const Eigen::VectorXcd& z,
                             double h) {
    int n = f.n();
    if (n < 2 || n > 4)
        throw InvalidArgument("closure residual supported for n in {2, 3, 4}");
    if (z.size() != n) throw DimensionMismatch("point dimension mismatch");

    CoordinateForm eta = [&f, n](const Eigen::VectorXcd& w,
                                 const std::vector<int>& dirs) {
        Eigen::MatrixXcd m(n, n);
        m.col(0) = hamiltonian_field_complex(f, w);
        for (std::size_t j = 0; j < dirs.size(); ++j)
            m.col(static_cast<int>(j) + 1) = coordinate_direction(n, dirs[j]);
        return std::imag(m.determinant());
    };

    double worst = 0.0;
    for (const auto& tuple : ascending_subsets(2 * n, n))
        worst = std::max(worst, std::abs(exterior_derivative_fd(eta, n, z, tuple, h)));
    return worst;
}

// ---------------------------------------------------------------------------
// Moment generators and surface residuals

std::vector<HermQuad> moment_basis(int n) {
    if (n < 1) throw InvalidArgument("ambient dimension must be at least 1");
    std::vector<HermQuad> basis;
    basis.push_back(HermQuad::constant(n, 1.0));
    for (int k = 0; k < n; ++k) {
        basis.push_back(HermQuad::coordinate_re(n, k));
        basis.push_back(HermQuad::coordinate_im(n, k));
    }
    Eigen::VectorXcd no_b = Eigen::VectorXcd::Zero(n);
    for (int k = 0; k + 1 < n; ++k) {
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
        a(k, k) = 1;
        a(k + 1, k + 1) = -1;
        basis.emplace_back(0.0, no_b, a);
    }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
            a(j, k) = 1;
            a(k, j) = 1;
            basis.emplace_back(0.0, no_b, a);
            a(j, k) = Complex(0, 1);
            a(k, j) = Complex(0, -1);
            basis.emplace_back(0.0, no_b, a);
        }
    return basis;  // 1 + 2n + (n^2 - 1) = n(n + 2) generators
}

std::vector<double> sl_moment_residuals(const std::vector<SurfaceSample>& samples,
                                        const std::vector<HermQuad>& basis) {
    if (samples.empty()) throw InvalidArgument("no surface samples");
    int n = static_cast<int>(samples[0].point.size());
    for (const auto& s : samples)
        if (s.point.size() != n || s.tangents.size() != n - 1 ||
            s.tangents.ambient_n() != n)
            throw DimensionMismatch(
                "every surface sample needs a point in C^n and n-1 tangents");

    std::vector<double> residuals;
    residuals.reserve(basis.size());
    Eigen::MatrixXcd m(n, n);
    for (const auto& f : basis) {
        if (f.n() != n) throw DimensionMismatch("basis dimension mismatch");
        double acc = 0.0;
        for (const auto& s : samples) {
            m.col(0) = hamiltonian_field_complex(f, s.point);
            for (int j = 0; j + 1 < n; ++j)
                m.col(j + 1) = s.tangents.complex_vector(j);
            acc += s.weight * std::imag(m.determinant());
        }
        residuals.push_back(acc);
    }
    return residuals;
}

}  // namespace slaglab
