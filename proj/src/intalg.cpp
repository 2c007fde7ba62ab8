#include "slaglab/intalg.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace slaglab {

using Big = boost::multiprecision::cpp_int;

namespace {

long long checked_narrow(const Big& x) {
    if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
        throw Overflow("integer result does not fit in 64 bits");
    return static_cast<long long>(x);
}

// Dense arbitrary-precision working matrix for the Smith reduction.
struct BigMat {
    int rows = 0, cols = 0;
    std::vector<Big> e;

    BigMat(int r, int c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * c) {}

    static BigMat identity(int n) {
        BigMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    Big& at(int i, int j) { return e[static_cast<std::size_t>(i) * cols + j]; }
    const Big& at(int i, int j) const { return e[static_cast<std::size_t>(i) * cols + j]; }

    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int j = 0; j < cols; ++j) std::swap(at(a, j), at(b, j));
    }
    void swap_cols(int a, int b) {
        if (a == b) return;
        for (int i = 0; i < rows; ++i) std::swap(at(i, a), at(i, b));
    }
    void add_row(int dst, int src, const Big& factor) {
        for (int j = 0; j < cols; ++j) at(dst, j) += factor * at(src, j);
    }
    void add_col(int dst, int src, const Big& factor) {
        for (int i = 0; i < rows; ++i) at(i, dst) += factor * at(i, src);
    }
    void negate_row(int r) {
        for (int j = 0; j < cols; ++j) at(r, j) = -at(r, j);
    }
};

BigMat to_big(const IntegerMatrix& m) {
    BigMat b(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) b.at(i, j) = m.at(i, j);
    return b;
}

IntegerMatrix from_big(const BigMat& b) {
    IntegerMatrix m(b.rows, b.cols);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) m.set(i, j, checked_narrow(b.at(i, j)));
    return m;
}

// Reduces a in place to Smith form, accumulating row operations into u and
// column operations into v so that u * a_in * v = a_out.
void smith_reduce(BigMat& a, BigMat& u, BigMat& v) {
    const int k = std::min(a.rows, a.cols);
    for (int t = 0; t < k; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing submatrix becomes the pivot.
            int pi = -1, pj = -1;
            for (int i = t; i < a.rows; ++i)
                for (int j = t; j < a.cols; ++j) {
                    if (a.at(i, j) == 0) continue;
                    if (pi < 0 || abs(a.at(i, j)) < abs(a.at(pi, pj))) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) return;  // trailing submatrix is zero
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // One Euclidean sweep. Truncated division leaves remainders
            // strictly smaller than the pivot, so re-picking the pivot makes
            // progress whenever a remainder survives.
            bool dirty = false;
            for (int i = t + 1; i < a.rows; ++i) {
                if (a.at(i, t) == 0) continue;
                Big q = a.at(i, t) / a.at(t, t);
                if (q != 0) {
                    a.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                if (a.at(i, t) != 0) dirty = true;
            }
            for (int j = t + 1; j < a.cols; ++j) {
                if (a.at(t, j) == 0) continue;
                Big q = a.at(t, j) / a.at(t, t);
                if (q != 0) {
                    a.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                if (a.at(t, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // Pivot must divide the whole trailing submatrix for the
            // invariant-factor chain; folding a bad row into row t lets the
            // Euclidean sweep shrink the pivot.
            bool fixed_up = false;
            for (int i = t + 1; i < a.rows && !fixed_up; ++i)
                for (int j = t + 1; j < a.cols && !fixed_up; ++j)
                    if (a.at(i, j) % a.at(t, t) != 0) {
                        a.add_row(t, i, 1);
                        u.add_row(t, i, 1);
                        fixed_up = true;
                    }
            if (!fixed_up) break;
        }
        if (a.at(t, t) < 0) {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
}

// Columns expressing "k_j * (torsion generator j) = 0" for the codomain,
// appended to a hom's matrix so lattice arithmetic can see the relations.
BigMat with_torsion_relations(const IntegerMatrix& m, const FgAbelianGroup& codomain) {
    const int s = static_cast<int>(codomain.torsion().size());
    BigMat a(m.rows(), m.cols() + s);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) a.at(i, j) = m.at(i, j);
    for (int j = 0; j < s; ++j)
        a.at(codomain.rank() + j, m.cols() + j) = codomain.torsion()[static_cast<std::size_t>(j)];
    return a;
}

}  // namespace

std::size_t IntegerMatrix::index(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw OutOfRange("IntegerMatrix index out of range");
    return static_cast<std::size_t>(i) * cols_ + j;
}

IntegerMatrix::IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw InvalidArgument("IntegerMatrix dimensions must be nonnegative");
    e_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

IntegerMatrix::IntegerMatrix(int rows, int cols, std::vector<long long> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (rows < 0 || cols < 0) throw InvalidArgument("IntegerMatrix dimensions must be nonnegative");
    if (e_.size() != static_cast<std::size_t>(rows) * cols)
        throw DimensionMismatch("IntegerMatrix entry count does not match rows*cols");
}

IntegerMatrix IntegerMatrix::identity(int n) {
    IntegerMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

SmithResult smith_normal_form(const IntegerMatrix& m) {
    BigMat a = to_big(m);
    BigMat u = BigMat::identity(m.rows());
    BigMat v = BigMat::identity(m.cols());
    smith_reduce(a, u, v);
    return SmithResult{from_big(u), from_big(a), from_big(v)};
}

FgAbelianGroup::FgAbelianGroup(int rank, std::vector<long long> torsion)
    : rank_(rank), torsion_(std::move(torsion)) {
    if (rank_ < 0) throw InvalidArgument("group rank must be nonnegative");
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        if (torsion_[i] < 2) throw InvalidArgument("torsion coefficients must be >= 2");
        if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
            throw InvalidArgument("torsion coefficients must form a divisibility chain");
    }
}

std::vector<long long> FgAbelianGroup::reduce(std::vector<long long> x) const {
    if (x.size() != static_cast<std::size_t>(generators()))
        throw ElementShapeMismatch("element length does not match the group's generator count");
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        long long k = torsion_[i];
        long long& c = x[static_cast<std::size_t>(rank_) + i];
        c %= k;
        if (c < 0) c += k;
    }
    return x;
}

bool FgAbelianGroup::is_zero(const std::vector<long long>& x) const {
    std::vector<long long> r = reduce(x);
    return std::all_of(r.begin(), r.end(), [](long long c) { return c == 0; });
}

std::string FgAbelianGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream out;
    bool first = true;
    if (rank_ > 0) {
        out << (rank_ == 1 ? "Z" : "Z^" + std::to_string(rank_));
        first = false;
    }
    for (long long k : torsion_) {
        if (!first) out << " + ";
        out << "Z/" << k;
        first = false;
    }
    return out.str();
}

GroupHom::GroupHom(FgAbelianGroup domain, FgAbelianGroup codomain, IntegerMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.generators() || matrix_.cols() != domain_.generators())
        throw DimensionMismatch("hom matrix shape must be codomain generators x domain generators");
    // A domain generator of order k must land on an element killed by k.
    for (std::size_t jt = 0; jt < domain_.torsion().size(); ++jt) {
        int j = domain_.rank() + static_cast<int>(jt);
        Big k = domain_.torsion()[jt];
        for (int i = 0; i < matrix_.rows(); ++i) {
            Big scaled = k * Big(matrix_.at(i, j));
            if (i < codomain_.rank()) {
                if (scaled != 0)
                    throw InvalidArgument("hom does not respect torsion: finite-order generator maps to infinite-order element");
            } else {
                Big order = codomain_.torsion()[static_cast<std::size_t>(i - codomain_.rank())];
                if (scaled % order != 0)
                    throw InvalidArgument("hom does not respect torsion: image order does not divide generator order");
            }
        }
    }
}

GroupHom GroupHom::identity(const FgAbelianGroup& g) {
    return GroupHom(g, g, IntegerMatrix::identity(g.generators()));
}

GroupHom GroupHom::zero(const FgAbelianGroup& domain, const FgAbelianGroup& codomain) {
    return GroupHom(domain, codomain, IntegerMatrix(codomain.generators(), domain.generators()));
}

std::vector<long long> GroupHom::apply(const std::vector<long long>& x) const {
    if (x.size() != static_cast<std::size_t>(domain_.generators()))
        throw ElementShapeMismatch("element length does not match the hom's domain");
    std::vector<long long> y(static_cast<std::size_t>(codomain_.generators()));
    for (int i = 0; i < codomain_.generators(); ++i) {
        Big acc = 0;
        for (int j = 0; j < domain_.generators(); ++j)
            acc += Big(matrix_.at(i, j)) * Big(x[static_cast<std::size_t>(j)]);
        if (i >= codomain_.rank()) {
            Big k = codomain_.torsion()[static_cast<std::size_t>(i - codomain_.rank())];
            acc %= k;
            if (acc < 0) acc += k;
        }
        y[static_cast<std::size_t>(i)] = checked_narrow(acc);
    }
    return y;
}

bool in_image(const GroupHom& h, const std::vector<long long>& y) {
    if (y.size() != static_cast<std::size_t>(h.codomain().generators()))
        throw ElementShapeMismatch("element length does not match the hom's codomain");
    BigMat a = with_torsion_relations(h.matrix(), h.codomain());
    BigMat u = BigMat::identity(a.rows);
    BigMat v = BigMat::identity(a.cols);
    smith_reduce(a, u, v);
    // h(x) = y is solvable iff U y lies in the diagonal lattice of D.
    const int k = std::min(a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i) {
        Big w = 0;
        for (int j = 0; j < a.rows; ++j) w += u.at(i, j) * Big(y[static_cast<std::size_t>(j)]);
        Big d = (i < k) ? a.at(i, i) : Big(0);
        if (d == 0) {
            if (w != 0) return false;
        } else if (w % d != 0) {
            return false;
        }
    }
    return true;
}

FgAbelianGroup cokernel(const GroupHom& h) {
    BigMat a = with_torsion_relations(h.matrix(), h.codomain());
    BigMat u = BigMat::identity(a.rows);
    BigMat v = BigMat::identity(a.cols);
    smith_reduce(a, u, v);
    const int k = std::min(a.rows, a.cols);
    int nonzero = 0;
    std::vector<long long> torsion;
    for (int i = 0; i < k; ++i) {
        if (a.at(i, i) == 0) break;
        ++nonzero;
        if (a.at(i, i) > 1) torsion.push_back(checked_narrow(a.at(i, i)));
    }
    return FgAbelianGroup(a.rows - nonzero, std::move(torsion));
}

}  // namespace slaglab
