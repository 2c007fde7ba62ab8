#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "slaglab/errors.hpp"

namespace slaglab {

using Complex = std::complex<double>;

/// Dense square complex matrix with the tolerance conventions shared by the
/// whole library.
///
/// Invertibility is judged against a size-aware tolerance,
/// 1e-10 * (max column norm)^n, so that rescaled copies of the same matrix
/// get the same verdict. Unitarity uses the fixed tolerance kUnitaryTol.
class ComplexSquareMatrix {
public:
    /// Throws InvalidArgument unless `entries` is square with finite entries.
    explicit ComplexSquareMatrix(Eigen::MatrixXcd entries);

    static ComplexSquareMatrix identity(int n);

    int size() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXcd& entries() const { return m_; }

    Complex determinant() const { return m_.determinant(); }

    /// 1e-10 * (max column norm)^n.
    double singular_tolerance() const;

    bool is_invertible() const;
    bool is_unitary(double tol = kUnitaryTol) const;
    bool is_special_unitary(double tol = kUnitaryTol) const;

    static constexpr double kUnitaryTol = 1e-9;

private:
    Eigen::MatrixXcd m_;
};

/// Ordered list of k <= n real 2n-vectors in C^n.
///
/// Real coordinates are interleaved as x_1, y_1, ..., x_n, y_n; the complex
/// reading of a vector has entry j equal to x_j + i*y_j. Every module uses
/// this one convention.
class RealFrame {
public:
    explicit RealFrame(int ambient_n);
    RealFrame(int ambient_n, std::vector<Eigen::VectorXd> vectors);

    /// Columns of `columns` become the frame vectors (n = rows).
    static RealFrame from_complex_columns(const Eigen::MatrixXcd& columns);

    int ambient_n() const { return n_; }
    int size() const { return static_cast<int>(v_.size()); }

    /// Appends one real 2n-vector. Throws DimensionMismatch on wrong length,
    /// InvalidArgument on a non-finite or zero vector, OutOfRange when the
    /// frame already holds n vectors.
    void append(const Eigen::VectorXd& v);
    void append_complex(const Eigen::VectorXcd& v);

    const Eigen::VectorXd& vector(int i) const { return v_.at(static_cast<std::size_t>(i)); }
    Eigen::VectorXcd complex_vector(int i) const;

    /// n x k matrix whose column i is complex_vector(i).
    Eigen::MatrixXcd complex_matrix() const;

    /// Modified Gram-Schmidt copy. Throws DegenerateFrame when the vectors
    /// are numerically dependent.
    RealFrame orthonormalized() const;

    bool is_orthonormal(double tol = 1e-9) const;

private:
    int n_;
    std::vector<Eigen::VectorXd> v_;
};

/// Polar-decomposition retraction: with M = P U (P positive self-adjoint,
/// U unitary), returns (t I + (1 - t) P) U. Interpolates from M at t = 0 to
/// its unitary factor at t = 1 and stays invertible in between.
///
/// P is the Hermitian square root of M M* computed by eigendecomposition.
/// Throws SingularMatrix below the singular tolerance and OutOfRange for
/// t outside [0, 1].
ComplexSquareMatrix polar_retract(const ComplexSquareMatrix& m, double t);

/// The unitary polar factor, i.e. polar_retract(m, 1).
ComplexSquareMatrix unitary_part(const ComplexSquareMatrix& m);

/// Determinant of the n x n complex matrix whose columns are the frame
/// vectors read as complex n-vectors. Requires exactly n vectors
/// (DimensionMismatch otherwise). On an orthonormal frame spanning a
/// Lagrangian plane the result has modulus 1.
Complex complex_determinant(const RealFrame& frame);

}  // namespace slaglab
