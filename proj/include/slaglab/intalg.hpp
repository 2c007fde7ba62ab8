#pragma once

#include <string>
#include <vector>

#include "slaglab/errors.hpp"

namespace slaglab {

/// Exact integer matrix, row-major. Entries are 64-bit; computations that
/// could overflow run on arbitrary-precision integers internally and report
/// Overflow when a result does not fit back, never wrapping.
class IntegerMatrix {
public:
    IntegerMatrix(int rows, int cols);
    IntegerMatrix(int rows, int cols, std::vector<long long> entries);
    static IntegerMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long long at(int i, int j) const { return e_[index(i, j)]; }
    void set(int i, int j, long long v) { e_[index(i, j)] = v; }

    bool operator==(const IntegerMatrix& other) const = default;

private:
    std::size_t index(int i, int j) const;
    int rows_;
    int cols_;
    std::vector<long long> e_;
};

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...
struct SmithResult {
    IntegerMatrix u;
    IntegerMatrix d;
    IntegerMatrix v;
};

SmithResult smith_normal_form(const IntegerMatrix& m);

/// Z^rank + Z/k_1 + ... + Z/k_s with 2 <= k_1 | k_2 | ... | k_s.
///
/// Elements are integer vectors of length rank + s: the first rank
/// coordinates are free, the rest are torsion coordinates reduced modulo
/// their coefficient.
class FgAbelianGroup {
public:
    FgAbelianGroup(int rank, std::vector<long long> torsion);
    static FgAbelianGroup trivial() { return FgAbelianGroup(0, {}); }
    static FgAbelianGroup free(int rank) { return FgAbelianGroup(rank, {}); }

    int rank() const { return rank_; }
    const std::vector<long long>& torsion() const { return torsion_; }
    int generators() const { return rank_ + static_cast<int>(torsion_.size()); }
    bool is_trivial() const { return generators() == 0; }

    /// Reduces torsion coordinates into [0, k). Throws ElementShapeMismatch
    /// on wrong length.
    std::vector<long long> reduce(std::vector<long long> x) const;
    bool is_zero(const std::vector<long long>& x) const;

    std::string to_string() const;  // e.g. "Z^2 + Z/2 + Z/4", "0" when trivial

    bool operator==(const FgAbelianGroup& other) const = default;

private:
    int rank_;
    std::vector<long long> torsion_;
};

/// Homomorphism between finitely generated abelian groups, given by its
/// matrix on generators (rows = codomain generators, columns = domain
/// generators). Construction checks that torsion is respected: a domain
/// generator of order k must map to an element killed by k.
class GroupHom {
public:
    GroupHom(FgAbelianGroup domain, FgAbelianGroup codomain, IntegerMatrix matrix);
    static GroupHom identity(const FgAbelianGroup& g);
    static GroupHom zero(const FgAbelianGroup& domain, const FgAbelianGroup& codomain);

    const FgAbelianGroup& domain() const { return domain_; }
    const FgAbelianGroup& codomain() const { return codomain_; }
    const IntegerMatrix& matrix() const { return matrix_; }

    std::vector<long long> apply(const std::vector<long long>& x) const;

private:
    FgAbelianGroup domain_;
    FgAbelianGroup codomain_;
    IntegerMatrix matrix_;
};

/// Exact membership test: does h(x) = y have a solution? Decided by Smith
/// reduction of the matrix augmented with the codomain torsion relations.
bool in_image(const GroupHom& h, const std::vector<long long>& y);

/// codomain / image(h), in invariant-factor form.
FgAbelianGroup cokernel(const GroupHom& h);

}  // namespace slaglab
