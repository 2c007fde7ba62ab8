#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "slaglab/cxmat.hpp"
#include "slaglab/rng.hpp"

using namespace slaglab;

namespace {

const double kPi = 3.14159265358979323846;

Eigen::MatrixXcd random_gaussian(int n, Rng& rng) {
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.complex_gauss();
    return m;
}

// Rejects draws whose singular-value spread would eat the test tolerances.
Eigen::MatrixXcd random_conditioned(int n, Rng& rng) {
    while (true) {
        Eigen::MatrixXcd m = random_gaussian(n, rng);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        double smin = svd.singularValues().minCoeff();
        double smax = svd.singularValues().maxCoeff();
        if (smin / smax >= 1e-3) return m;
    }
}

Eigen::MatrixXcd random_unitary(int n, Rng& rng) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_gaussian(n, rng));
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        std::complex<double> d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

// Independent polar oracle: X_{k+1} = (X_k + X_k^{-*}) / 2 converges to the
// unitary factor.
Eigen::MatrixXcd newton_unitary(Eigen::MatrixXcd x) {
    for (int k = 0; k < 200; ++k) {
        Eigen::MatrixXcd next = 0.5 * (x + x.adjoint().inverse());
        double step = (next - x).norm();
        x = next;
        if (step < 1e-15 * x.norm()) break;
    }
    return x;
}

Eigen::VectorXcd sw_gamma(int p, int q, double theta) {
    Eigen::VectorXcd v(2);
    double s = 1.0 / std::sqrt(double(p + q));
    v(0) = s * std::sqrt(double(q)) * std::polar(1.0, p * theta);
    v(1) = s * std::sqrt(double(p)) * std::polar(1.0, -q * theta + kPi / 2.0);
    return v;
}

Eigen::VectorXcd sw_gamma_prime(int p, int q, double theta) {
    Eigen::VectorXcd v(2);
    double s = 1.0 / std::sqrt(double(p + q));
    v(0) = s * p * std::sqrt(double(q)) * std::polar(1.0, p * theta + kPi / 2.0);
    v(1) = s * q * std::sqrt(double(p)) * std::polar(1.0, -q * theta);
    return v;
}

}  // namespace

TEST_CASE("construction validates shape and finiteness") {
    CHECK_THROWS_AS(ComplexSquareMatrix{Eigen::MatrixXcd::Zero(2, 3)}, InvalidArgument);
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ComplexSquareMatrix{bad}, InvalidArgument);
    CHECK(ComplexSquareMatrix::identity(3).size() == 3);
}

TEST_CASE("invertibility tolerance scales with the matrix") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    m(1, 1) = 1e-12;
    CHECK_FALSE(ComplexSquareMatrix(m).is_invertible());
    // A uniformly small matrix is fine: the tolerance rescales with it.
    CHECK(ComplexSquareMatrix(Eigen::MatrixXcd::Identity(2, 2) * 1e-6).is_invertible());
}

TEST_CASE("unitary predicates") {
    Rng rng(11);
    ComplexSquareMatrix u(random_unitary(3, rng));
    CHECK(u.is_unitary());
    ComplexSquareMatrix su(u.entries() / std::pow(u.determinant(), 1.0 / 3.0));
    CHECK(su.is_special_unitary());
    CHECK_FALSE(ComplexSquareMatrix(2.0 * Eigen::MatrixXcd::Identity(2, 2)).is_unitary());
}

TEST_CASE("polar_retract on unitary input returns the input for every t") {
    Rng rng(5);
    ComplexSquareMatrix u(random_unitary(3, rng));
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
        ComplexSquareMatrix r = polar_retract(u, t);
        CHECK((r.entries() - u.entries()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("polar_retract diagonal example") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 1.0;
    ComplexSquareMatrix r = polar_retract(ComplexSquareMatrix(d), 0.5);
    CHECK(std::abs(r.entries()(0, 0) - Complex(1.5, 0)) < 1e-12);
    CHECK(std::abs(r.entries()(1, 1) - Complex(1.0, 0)) < 1e-12);
    CHECK(std::abs(r.entries()(0, 1)) < 1e-12);
    CHECK(std::abs(r.entries()(1, 0)) < 1e-12);
}

TEST_CASE("polar_retract argument errors") {
    ComplexSquareMatrix id = ComplexSquareMatrix::identity(2);
    CHECK_THROWS_AS(polar_retract(id, -0.1), OutOfRange);
    CHECK_THROWS_AS(polar_retract(id, 1.1), OutOfRange);
    Eigen::MatrixXcd sing = Eigen::MatrixXcd::Zero(2, 2);
    sing(0, 0) = 1.0;
    sing(0, 1) = 1.0;
    CHECK_THROWS_AS(polar_retract(ComplexSquareMatrix(sing), 0.5), SingularMatrix);
}

TEST_CASE("unitary_part diagonal examples") {
    ComplexSquareMatrix id = ComplexSquareMatrix::identity(2);
    CHECK((unitary_part(id).entries() - id.entries()).norm() < 1e-13);

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 0.5;
    CHECK((unitary_part(ComplexSquareMatrix(d)).entries() -
           Eigen::MatrixXcd::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    // Analytic polar factor of a diagonal matrix keeps each entry's phase.
    d(0, 0) = 2.0 * std::polar(1.0, kPi / 3.0);
    d(1, 1) = 1.0;
    ComplexSquareMatrix u = unitary_part(ComplexSquareMatrix(d));
    CHECK(std::abs(u.entries()(0, 0) - std::polar(1.0, kPi / 3.0)) < 1e-12);
    CHECK(std::abs(u.entries()(1, 1) - Complex(1, 0)) < 1e-12);
}

TEST_CASE("polar path: endpoint identities, unitarity, invertibility") {
    Rng rng(77);
    for (int n : {2, 3, 4}) {
        for (int trial = 0; trial < 25; ++trial) {
            ComplexSquareMatrix m(random_conditioned(n, rng));
            CHECK((polar_retract(m, 0.0).entries() - m.entries()).cwiseAbs().maxCoeff() <
                  1e-12 * m.entries().norm());
            CHECK(polar_retract(m, 1.0).is_unitary());
            for (double t : {0.1, 0.3, 0.7, 0.9})
                CHECK(polar_retract(m, t).is_invertible());
        }
    }
}

TEST_CASE("polar factor agrees with the Newton iteration oracle") {
    Rng rng(123);
    for (int trial = 0; trial < 30; ++trial) {
        Eigen::MatrixXcd m = random_conditioned(3, rng);
        Eigen::MatrixXcd expect = newton_unitary(m);
        Eigen::MatrixXcd got = unitary_part(ComplexSquareMatrix(m)).entries();
        CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("two-sided unitary equivariance") {
    Rng rng(2024);
    for (int n : {2, 3, 4}) {
        for (int trial = 0; trial < 40; ++trial) {
            Eigen::MatrixXcd m = random_conditioned(n, rng);
            Eigen::MatrixXcd a = random_unitary(n, rng);
            for (double t : {0.0, 0.4, 1.0}) {
                Eigen::MatrixXcd left =
                    polar_retract(ComplexSquareMatrix(a * m), t).entries();
                Eigen::MatrixXcd left_want =
                    a * polar_retract(ComplexSquareMatrix(m), t).entries();
                CHECK((left - left_want).cwiseAbs().maxCoeff() < 1e-9);

                Eigen::MatrixXcd right =
                    polar_retract(ComplexSquareMatrix(m * a), t).entries();
                Eigen::MatrixXcd right_want =
                    polar_retract(ComplexSquareMatrix(m), t).entries() * a;
                CHECK((right - right_want).cwiseAbs().maxCoeff() < 1e-9);
            }
        }
    }
}

TEST_CASE("real matrices get a real orthogonal unitary factor") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXcd m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = rng.gauss();
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        if (svd.singularValues().minCoeff() < 1e-3) continue;
        Eigen::MatrixXcd u = unitary_part(ComplexSquareMatrix(m)).entries();
        CHECK(u.imag().cwiseAbs().maxCoeff() < 1e-10);
        Eigen::MatrixXd ur = u.real();
        CHECK((ur * ur.transpose() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <
              1e-9);
    }
}

TEST_CASE("frame stores interleaved coordinates and reads them back as complex") {
    RealFrame f(2);
    Eigen::VectorXd v(4);
    v << 1.0, 2.0, 3.0, 4.0;  // x1 y1 x2 y2
    f.append(v);
    Eigen::VectorXcd c = f.complex_vector(0);
    CHECK(c(0) == Complex(1.0, 2.0));
    CHECK(c(1) == Complex(3.0, 4.0));
}

TEST_CASE("frame append rejects bad input") {
    RealFrame f(2);
    CHECK_THROWS_AS(f.append(Eigen::VectorXd::Zero(3)), DimensionMismatch);
    CHECK_THROWS_AS(f.append(Eigen::VectorXd::Zero(4)), InvalidArgument);
    f.append_complex(Eigen::VectorXcd::Unit(2, 0));
    f.append_complex(Eigen::VectorXcd::Unit(2, 1));
    CHECK_THROWS_AS(f.append_complex(Eigen::VectorXcd::Unit(2, 0)), OutOfRange);
}

TEST_CASE("orthonormalization is order-preserving Gram-Schmidt") {
    RealFrame f(2);
    Eigen::VectorXd v1(4), v2(4);
    v1 << 2.0, 0.0, 0.0, 0.0;
    v2 << 1.0, 0.0, 1.0, 0.0;
    f.append(v1);
    f.append(v2);
    RealFrame o = f.orthonormalized();
    CHECK(o.is_orthonormal(1e-12));
    CHECK(std::abs(o.vector(0)(0) - 1.0) < 1e-12);  // first vector kept (normalized)
    CHECK(std::abs(o.vector(1)(2) - 1.0) < 1e-12);  // second became e_2 direction

    RealFrame dep(2);
    dep.append(v1);
    Eigen::VectorXd v3 = v1 * 0.5;
    dep.append(v3);
    CHECK_THROWS_AS(dep.orthonormalized(), DegenerateFrame);
}

TEST_CASE("complex determinant of coordinate frames") {
    // Standard real basis of R^n inside C^n.
    RealFrame f = RealFrame::from_complex_columns(Eigen::MatrixXcd::Identity(3, 3));
    CHECK(std::abs(complex_determinant(f) - Complex(1, 0)) < 1e-15);

    // Rotating every basis vector by e^{i a} multiplies the determinant by e^{i n a}.
    double alpha = 0.37;
    Eigen::MatrixXcd rot =
        std::polar(1.0, alpha) * Eigen::MatrixXcd::Identity(3, 3);
    RealFrame g = RealFrame::from_complex_columns(rot);
    CHECK(std::abs(complex_determinant(g) - std::polar(1.0, 3 * alpha)) < 1e-12);

    RealFrame partial(3);
    partial.append_complex(Eigen::VectorXcd::Unit(3, 0));
    CHECK_THROWS_AS(complex_determinant(partial), DimensionMismatch);
}

TEST_CASE("determinant of the (1,2) cone frame, radial vector first") {
    int p = 1, q = 2;
    double theta = kPi / 4.0;
    Eigen::MatrixXcd cols(2, 2);
    cols.col(0) = sw_gamma(p, q, theta);
    cols.col(1) = sw_gamma_prime(p, q, theta) / std::sqrt(double(p * q));
    Complex det = complex_determinant(RealFrame::from_complex_columns(cols));
    CHECK(std::abs(det - std::polar(1.0, -kPi / 4.0)) < 1e-12);

    // General law: radial-first determinant is e^{i(p-q)theta}; swapping the
    // two columns flips the sign.
    for (auto [pp, qq] : {std::pair{2, 3}, std::pair{3, 5}}) {
        double th = 0.83;
        Eigen::MatrixXcd c(2, 2);
        c.col(0) = sw_gamma(pp, qq, th);
        c.col(1) = sw_gamma_prime(pp, qq, th) / std::sqrt(double(pp * qq));
        Complex d = complex_determinant(RealFrame::from_complex_columns(c));
        CHECK(std::abs(d - std::polar(1.0, (pp - qq) * th)) < 1e-12);
        Eigen::MatrixXcd swapped(2, 2);
        swapped.col(0) = c.col(1);
        swapped.col(1) = c.col(0);
        Complex ds = complex_determinant(RealFrame::from_complex_columns(swapped));
        CHECK(std::abs(ds + d) < 1e-12);
    }
}

TEST_CASE("unitary columns span Lagrangian planes: determinant has modulus one") {
    Rng rng(404);
    for (int trial = 0; trial < 50; ++trial) {
        RealFrame f = RealFrame::from_complex_columns(random_unitary(3, rng));
        CHECK(f.is_orthonormal(1e-12));
        CHECK(std::abs(std::abs(complex_determinant(f)) - 1.0) < 1e-9);
    }
}
