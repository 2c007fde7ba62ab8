#pragma once

// Characteristic classes and characteristic numbers for a small catalog of
// closed manifolds, combined through products, disjoint unions, and
// orientation reversal. The catalog is deliberately closed-world: every atom
// carries either an explicit truncated cohomology ring with its total
// Stiefel-Whitney and Pontryagin classes, or a table of characteristic
// numbers when no usable ring presentation is available.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slaglab/errors.hpp"

namespace slaglab {

enum class CoeffRing { Z, Z2 };

struct ClassGenerator {
    std::string name;
    int degree = 1;
    // Power at which the generator truncates to zero, e.g. cap = 3 means
    // g^3 = 0 while g^2 may survive.
    int cap = 2;

    bool operator==(const ClassGenerator&) const = default;
};

// A cohomology class in a truncated graded-commutative polynomial ring.
// Terms are indexed by exponent vectors over the fixed generator list; any
// monomial whose weighted degree exceeds the truncation degree, or which
// raises a generator to its cap, is identically zero. Coefficients live in
// Z or Z/2 per the ring tag.
//
// All catalog classes with odd-degree generators (tori, special unitary
// groups) have total classes supported on even multidegrees only, so plain
// commutative multiplication is sound here and no Koszul signs appear.
class GradedClass {
  public:
    GradedClass(CoeffRing ring, std::vector<ClassGenerator> generators, int truncation);

    // The multiplicative unit, constant 1.
    static GradedClass unit(CoeffRing ring, std::vector<ClassGenerator> generators,
                            int truncation);

    CoeffRing ring() const { return ring_; }
    const std::vector<ClassGenerator>& generators() const { return generators_; }
    int truncation() const { return truncation_; }

    // Coefficient of the given exponent vector, zero when absent.
    long long coeff(const std::vector<int>& exponents) const;

    // Adds c times the monomial, then renormalizes (truncation, caps, and
    // mod 2 reduction for Z/2 rings).
    void add_term(const std::vector<int>& exponents, long long c);

    // Product in the truncated ring. Both operands must share the ring tag
    // and generator list.
    GradedClass multiplied_by(const GradedClass& other) const;
    GradedClass squared() const { return multiplied_by(*this); }

    // The part of weighted degree d, as a class in the same ring.
    GradedClass homogeneous_part(int d) const;

    bool is_unit() const;
    bool is_zero() const;

    // Term table keyed by exponent vector. Keys are normalized: no zero
    // coefficients, no truncated monomials.
    const std::map<std::vector<int>, long long>& terms() const { return terms_; }

    // Rendering like "1 + a + a^2", terms ordered by degree.
    std::string to_string() const;

    bool operator==(const GradedClass&) const = default;

  private:
    int weighted_degree(const std::vector<int>& exponents) const;

    CoeffRing ring_;
    std::vector<ClassGenerator> generators_;
    int truncation_;
    std::map<std::vector<int>, long long> terms_;
};

enum class AtomKind {
    Point,
    Sphere,             // S(n)
    Torus,              // T(n)
    RealProjective,     // RP(n)
    ComplexProjective,  // CP(n)
    SpecialUnitary,     // SU(n), the underlying manifold
    WuManifold,         // Wu, the five dimensional SU(3)/SO(3)
    DegreeHypersurface  // SigmaD(d), smooth degree-d complex surface in CP^3
};

struct Atom {
    AtomKind kind = AtomKind::Point;
    int param = 0;  // unused for Point and Wu

    bool operator==(const Atom&) const = default;
};

// Expression tree over catalog atoms with '*' (cartesian product),
// '+' (disjoint union of equal-dimension pieces), and unary '-'
// (orientation reversal). Dimensions are computed and checked at
// construction time.
class ManifoldExpr {
  public:
    enum class Node { Atom, Product, DisjointUnion, Reverse };

    static ManifoldExpr atom(AtomKind kind, int param = 0);
    static ManifoldExpr product(ManifoldExpr lhs, ManifoldExpr rhs);
    // Throws DimensionMismatch unless both operands have equal dimension.
    static ManifoldExpr disjoint_union(ManifoldExpr lhs, ManifoldExpr rhs);
    static ManifoldExpr reversed(ManifoldExpr inner);

    Node node() const { return node_; }
    const Atom& atom_value() const;
    const std::vector<ManifoldExpr>& children() const { return children_; }
    int dimension() const { return dimension_; }

    // Round-trippable rendering, e.g. "RP(3) * S(1) + -(T(4))".
    std::string to_string() const;

  private:
    ManifoldExpr() = default;

    Node node_ = Node::Atom;
    Atom atom_;
    std::vector<ManifoldExpr> children_;
    int dimension_ = 0;
};

// Grammar:
//   expr   := term { '+' term }
//   term   := factor { '*' factor }
//   factor := '-' factor | '(' expr ')' | atom
//   atom   := NAME '(' INT ')' | 'Wu' | 'Point'
// with NAME one of S, T, RP, CP, SU, SigmaD and INT a bare digit string.
// Whitespace is ignored everywhere. Parse failures throw ParseError (with
// the byte offset), unknown atom names throw UnknownAtom, and '+' between
// operands of different dimension throws DimensionMismatch.
ManifoldExpr parse_manifold_expr(const std::string& text);

// Total Stiefel-Whitney class of each disjoint-union component, in reading
// order. Components built purely from ring-model atoms are returned as
// classes in the tensor ring of the factors; a component containing a
// table-only atom (Wu, SigmaD) throws NoRingModel. Orientation reversal
// does not change the class.
std::vector<GradedClass> total_sw_class(const ManifoldExpr& e);

// All Stiefel-Whitney numbers of the expression, as a complete table over
// the canonical degree-n monomials in w_1..w_n, keyed like "w2 w3" or
// "w1^2 w3" (the empty monomial of a zero-dimensional manifold is keyed
// "1"). Values are in {0,1}. Disjoint unions add mod 2; orientation
// reversal changes nothing. Throws NoRingModel when a component multiplies
// a table-only atom by something else.
std::map<std::string, int> sw_numbers(const ManifoldExpr& e);

// All Pontryagin numbers, keyed by partition monomials like "p1^2 p3" (the
// empty partition of a zero-dimensional manifold is keyed "1" and produces
// the signed point count). Requires the expression to be orientable, of
// dimension divisible by four, and built from torsion-free ring atoms or
// table atoms with stored numbers; anything else throws Unsupported.
// Orientation reversal negates every value.
std::map<std::string, long long> pontrjagin_numbers(const ManifoldExpr& e);

struct CobordismVerdict {
    enum class Kind { Bounds, DoesNotBound, Undecided };
    Kind kind = Kind::Undecided;
    // DoesNotBound: the key of a nonvanishing characteristic number.
    // Undecided: a short reason.
    std::string detail;

    bool operator==(const CobordismVerdict&) const = default;
};

// Decides whether the expression bounds a compact oriented manifold, by
// checking that every Stiefel-Whitney number and (in dimensions divisible
// by four) every Pontryagin number vanishes. Throws NonOrientable for
// nonorientable input. Returns Undecided when the needed numbers cannot be
// computed from the catalog data.
CobordismVerdict is_nullcobordant(const ManifoldExpr& e);

struct ImmersionReport {
    // Whether the square of the total Stiefel-Whitney class is 1.
    bool sw_square_ok = false;
    // Whether the total Pontryagin class is 1.
    bool pontrjagin_trivial_ok = false;
    bool obstructed = true;
    std::string reason;  // set when obstructed
    // Set only when the expression is a single catalog atom known to be
    // stably parallelizable, in which case an immersion actually exists.
    std::optional<std::string> existence_note;
};

// Necessary conditions for a Lagrangian immersion into complex Euclidean
// space: w(TL)^2 = 1 and p(TL) = 1. Both tests are evaluated atom by atom,
// which is exact for products since the total classes tensor.
ImmersionReport lagrangian_immersion_obstructions(const ManifoldExpr& e);

struct EulerReport {
    long long chi = 0;
    bool embedding_possible = false;
    std::optional<std::string> advisory;
};

// The Euler-characteristic obstruction to Lagrangian embeddings:
// embedding_possible iff chi == 0. A passing result still carries an
// advisory, since closed exact Lagrangian submanifolds of C^n are ruled
// out on other grounds.
EulerReport euler_embedding_obstruction(const ManifoldExpr& e);

}  // namespace slaglab
