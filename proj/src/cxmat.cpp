#include "slaglab/cxmat.hpp"

#include <cmath>

namespace slaglab {

ComplexSquareMatrix::ComplexSquareMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1)
        throw InvalidArgument("ComplexSquareMatrix requires a nonempty square matrix");
    if (!m_.allFinite()) throw InvalidArgument("ComplexSquareMatrix entries must be finite");
}

ComplexSquareMatrix ComplexSquareMatrix::identity(int n) {
    return ComplexSquareMatrix(Eigen::MatrixXcd::Identity(n, n));
}

double ComplexSquareMatrix::singular_tolerance() const {
    double max_col = 0.0;
    for (int j = 0; j < m_.cols(); ++j) max_col = std::max(max_col, m_.col(j).norm());
    return 1e-10 * std::pow(max_col, static_cast<double>(size()));
}

bool ComplexSquareMatrix::is_invertible() const {
    return std::abs(determinant()) > singular_tolerance();
}

bool ComplexSquareMatrix::is_unitary(double tol) const {
    Eigen::MatrixXcd gram = m_ * m_.adjoint();
    gram -= Eigen::MatrixXcd::Identity(size(), size());
    return gram.cwiseAbs().maxCoeff() <= tol;
}

bool ComplexSquareMatrix::is_special_unitary(double tol) const {
    return is_unitary(tol) && std::abs(determinant() - Complex(1.0, 0.0)) <= tol;
}

RealFrame::RealFrame(int ambient_n) : n_(ambient_n) {
    if (n_ < 1) throw InvalidArgument("RealFrame ambient dimension must be positive");
}

RealFrame::RealFrame(int ambient_n, std::vector<Eigen::VectorXd> vectors) : RealFrame(ambient_n) {
    for (const auto& v : vectors) append(v);
}

RealFrame RealFrame::from_complex_columns(const Eigen::MatrixXcd& columns) {
    RealFrame f(static_cast<int>(columns.rows()));
    for (int j = 0; j < columns.cols(); ++j) f.append_complex(columns.col(j));
    return f;
}

void RealFrame::append(const Eigen::VectorXd& v) {
    if (v.size() != 2 * n_)
        throw DimensionMismatch("RealFrame vector must have 2n real coordinates");
    if (!v.allFinite()) throw InvalidArgument("RealFrame vector must be finite");
    if (v.norm() == 0.0) throw InvalidArgument("RealFrame vector must be nonzero");
    if (size() >= n_) throw OutOfRange("RealFrame holds at most n vectors");
    v_.push_back(v);
}

void RealFrame::append_complex(const Eigen::VectorXcd& v) {
    if (v.size() != n_)
        throw DimensionMismatch("complex vector must have n entries");
    Eigen::VectorXd r(2 * n_);
    for (int j = 0; j < n_; ++j) {
        r(2 * j) = v(j).real();
        r(2 * j + 1) = v(j).imag();
    }
    append(r);
}

Eigen::VectorXcd RealFrame::complex_vector(int i) const {
    const Eigen::VectorXd& v = vector(i);
    Eigen::VectorXcd c(n_);
    for (int j = 0; j < n_; ++j) c(j) = Complex(v(2 * j), v(2 * j + 1));
    return c;
}

Eigen::MatrixXcd RealFrame::complex_matrix() const {
    Eigen::MatrixXcd m(n_, size());
    for (int i = 0; i < size(); ++i) m.col(i) = complex_vector(i);
    return m;
}

RealFrame RealFrame::orthonormalized() const {
    // Modified Gram-Schmidt; keeps the input order, which downstream code
    // relies on (the radial vector of a cone frame stays last).
    std::vector<Eigen::VectorXd> out;
    out.reserve(v_.size());
    double scale = 0.0;
    for (const auto& v : v_) scale = std::max(scale, v.norm());
    for (const auto& v : v_) {
        Eigen::VectorXd w = v;
        for (const auto& u : out) w -= u.dot(w) * u;
        double norm = w.norm();
        if (norm <= 1e-10 * scale)
            throw DegenerateFrame("frame vectors are numerically dependent");
        out.push_back(w / norm);
    }
    return RealFrame(n_, std::move(out));
}

bool RealFrame::is_orthonormal(double tol) const {
    for (int i = 0; i < size(); ++i) {
        for (int j = i; j < size(); ++j) {
            double g = v_[static_cast<std::size_t>(i)].dot(v_[static_cast<std::size_t>(j)]);
            double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - want) > tol) return false;
        }
    }
    return true;
}

ComplexSquareMatrix polar_retract(const ComplexSquareMatrix& m, double t) {
    if (t < 0.0 || t > 1.0) throw OutOfRange("polar_retract requires t in [0, 1]");
    if (!m.is_invertible()) throw SingularMatrix("polar_retract requires an invertible matrix");

    const int n = m.size();
    // P = sqrt(M M*) via Hermitian eigendecomposition; U = P^{-1} M.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.entries() * m.entries().adjoint());
    if (es.info() != Eigen::Success)
        throw SingularMatrix("eigendecomposition of M M* failed");
    Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
    Eigen::VectorXd roots = vals.cwiseSqrt();
    const Eigen::MatrixXcd& q = es.eigenvectors();
    Eigen::MatrixXcd unitary =
        q * roots.cwiseInverse().asDiagonal() * q.adjoint() * m.entries();
    Eigen::MatrixXcd pt = q * ((1.0 - t) * roots).asDiagonal() * q.adjoint();
    pt += t * Eigen::MatrixXcd::Identity(n, n);
    return ComplexSquareMatrix(pt * unitary);
}

ComplexSquareMatrix unitary_part(const ComplexSquareMatrix& m) { return polar_retract(m, 1.0); }

Complex complex_determinant(const RealFrame& frame) {
    if (frame.size() != frame.ambient_n())
        throw DimensionMismatch("complex_determinant requires exactly n frame vectors");
    return frame.complex_matrix().determinant();
}

}  // namespace slaglab
