#include "slaglab/charclass.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace slaglab {

namespace {

long long reduce_coeff(CoeffRing ring, long long c) {
    if (ring == CoeffRing::Z2) {
        c %= 2;
        if (c < 0) c += 2;
    }
    return c;
}

}  // namespace

GradedClass::GradedClass(CoeffRing ring, std::vector<ClassGenerator> generators,
                         int truncation)
    : ring_(ring), generators_(std::move(generators)), truncation_(truncation) {
    if (truncation_ < 0) throw InvalidArgument("truncation degree must be nonnegative");
    for (const auto& g : generators_) {
        if (g.degree < 1) throw InvalidArgument("generator degree must be positive");
        if (g.cap < 1) throw InvalidArgument("generator cap must be positive");
    }
}

GradedClass GradedClass::unit(CoeffRing ring, std::vector<ClassGenerator> generators,
                              int truncation) {
    GradedClass c(ring, std::move(generators), truncation);
    c.add_term(std::vector<int>(c.generators_.size(), 0), 1);
    return c;
}

int GradedClass::weighted_degree(const std::vector<int>& exponents) const {
    int d = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        d += exponents[i] * generators_[i].degree;
    return d;
}

long long GradedClass::coeff(const std::vector<int>& exponents) const {
    auto it = terms_.find(exponents);
    return it == terms_.end() ? 0 : it->second;
}

void GradedClass::add_term(const std::vector<int>& exponents, long long c) {
    if (exponents.size() != generators_.size())
        throw InvalidArgument("exponent vector length does not match generator count");
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] < 0) throw InvalidArgument("negative exponent");
        if (exponents[i] >= generators_[i].cap) return;  // capped to zero
    }
    if (weighted_degree(exponents) > truncation_) return;
    long long v = reduce_coeff(ring_, terms_[exponents] + c);
    if (v == 0)
        terms_.erase(exponents);
    else
        terms_[exponents] = v;
}

GradedClass GradedClass::multiplied_by(const GradedClass& other) const {
    if (ring_ != other.ring_ || generators_ != other.generators_ ||
        truncation_ != other.truncation_)
        throw InvalidArgument("class product requires identical rings");
    GradedClass out(ring_, generators_, truncation_);
    std::vector<int> exp(generators_.size());
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : other.terms_) {
            for (std::size_t i = 0; i < exp.size(); ++i) exp[i] = ea[i] + eb[i];
            out.add_term(exp, ca * cb);
        }
    return out;
}

GradedClass GradedClass::homogeneous_part(int d) const {
    GradedClass out(ring_, generators_, truncation_);
    for (const auto& [e, c] : terms_)
        if (weighted_degree(e) == d) out.add_term(e, c);
    return out;
}

bool GradedClass::is_unit() const {
    return terms_.size() == 1 && terms_.begin()->second == 1 &&
           weighted_degree(terms_.begin()->first) == 0;
}

bool GradedClass::is_zero() const { return terms_.empty(); }

std::string GradedClass::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<int, const std::vector<int>*>> order;
    for (const auto& [e, c] : terms_) order.emplace_back(weighted_degree(e), &e);
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::ostringstream out;
    bool first = true;
    for (const auto& [deg, e] : order) {
        long long c = terms_.at(*e);
        if (!first) out << " + ";
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < e->size(); ++i) {
            if ((*e)[i] == 0) continue;
            if (!mono.empty()) mono += " ";
            mono += generators_[i].name;
            if ((*e)[i] > 1) mono += "^" + std::to_string((*e)[i]);
        }
        if (mono.empty())
            out << c;
        else if (c == 1)
            out << mono;
        else
            out << c << " " << mono;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Expression trees

namespace {

int atom_dimension(AtomKind kind, int param) {
    switch (kind) {
        case AtomKind::Point: return 0;
        case AtomKind::Sphere: return param;
        case AtomKind::Torus: return param;
        case AtomKind::RealProjective: return param;
        case AtomKind::ComplexProjective: return 2 * param;
        case AtomKind::SpecialUnitary: return param * param - 1;
        case AtomKind::WuManifold: return 5;
        case AtomKind::DegreeHypersurface: return 4;
    }
    throw InvalidArgument("unknown atom kind");
}

bool atom_takes_param(AtomKind kind) {
    return kind != AtomKind::Point && kind != AtomKind::WuManifold;
}

std::string atom_name(AtomKind kind) {
    switch (kind) {
        case AtomKind::Point: return "Point";
        case AtomKind::Sphere: return "S";
        case AtomKind::Torus: return "T";
        case AtomKind::RealProjective: return "RP";
        case AtomKind::ComplexProjective: return "CP";
        case AtomKind::SpecialUnitary: return "SU";
        case AtomKind::WuManifold: return "Wu";
        case AtomKind::DegreeHypersurface: return "SigmaD";
    }
    return "?";
}

std::string atom_display(const Atom& a) {
    std::string s = atom_name(a.kind);
    if (atom_takes_param(a.kind)) s += "(" + std::to_string(a.param) + ")";
    return s;
}

}  // namespace

ManifoldExpr ManifoldExpr::atom(AtomKind kind, int param) {
    if (atom_takes_param(kind) && param < 1)
        throw InvalidArgument("atom parameter must be a positive integer");
    ManifoldExpr e;
    e.node_ = Node::Atom;
    e.atom_ = Atom{kind, atom_takes_param(kind) ? param : 0};
    e.dimension_ = atom_dimension(kind, param);
    return e;
}

ManifoldExpr ManifoldExpr::product(ManifoldExpr lhs, ManifoldExpr rhs) {
    ManifoldExpr e;
    e.node_ = Node::Product;
    e.dimension_ = lhs.dimension_ + rhs.dimension_;
    e.children_.push_back(std::move(lhs));
    e.children_.push_back(std::move(rhs));
    return e;
}

ManifoldExpr ManifoldExpr::disjoint_union(ManifoldExpr lhs, ManifoldExpr rhs) {
    if (lhs.dimension_ != rhs.dimension_)
        throw DimensionMismatch("disjoint union of dimension " +
                                std::to_string(lhs.dimension_) + " and dimension " +
                                std::to_string(rhs.dimension_) + " pieces");
    ManifoldExpr e;
    e.node_ = Node::DisjointUnion;
    e.dimension_ = lhs.dimension_;
    e.children_.push_back(std::move(lhs));
    e.children_.push_back(std::move(rhs));
    return e;
}

ManifoldExpr ManifoldExpr::reversed(ManifoldExpr inner) {
    ManifoldExpr e;
    e.node_ = Node::Reverse;
    e.dimension_ = inner.dimension_;
    e.children_.push_back(std::move(inner));
    return e;
}

const Atom& ManifoldExpr::atom_value() const {
    if (node_ != Node::Atom) throw InvalidArgument("not an atom node");
    return atom_;
}

std::string ManifoldExpr::to_string() const {
    switch (node_) {
        case Node::Atom: return atom_display(atom_);
        case Node::Product:
            return children_[0].to_string() + " * " + children_[1].to_string();
        case Node::DisjointUnion:
            return children_[0].to_string() + " + " + children_[1].to_string();
        case Node::Reverse: return "-(" + children_[0].to_string() + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class ExprParser {
  public:
    explicit ExprParser(const std::string& text) : text_(text) {}

    ManifoldExpr parse() {
        ManifoldExpr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input, expected '+', '*', or end",
                             pos_);
        return e;
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError(std::string("expected ") + what, pos_);
        ++pos_;
    }

    ManifoldExpr parse_expr() {
        ManifoldExpr e = parse_term();
        while (true) {
            skip_ws();
            std::size_t at = pos_;
            if (!accept('+')) return e;
            ManifoldExpr rhs = parse_term();
            try {
                e = ManifoldExpr::disjoint_union(std::move(e), std::move(rhs));
            } catch (const DimensionMismatch& err) {
                throw DimensionMismatch(std::string(err.what()) + " (at offset " +
                                        std::to_string(at) + ")");
            }
        }
    }

    ManifoldExpr parse_term() {
        ManifoldExpr e = parse_factor();
        while (accept('*')) e = ManifoldExpr::product(std::move(e), parse_factor());
        return e;
    }

    ManifoldExpr parse_factor() {
        if (accept('-')) return ManifoldExpr::reversed(parse_factor());
        if (accept('(')) {
            ManifoldExpr e = parse_expr();
            expect(')', "')'");
            return e;
        }
        return parse_atom();
    }

    ManifoldExpr parse_atom() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= text_.size() ||
            !std::isalpha(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("expected an atom name, '-', or '('", pos_);
        while (pos_ < text_.size() &&
               std::isalnum(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);

        if (name == "Wu") return ManifoldExpr::atom(AtomKind::WuManifold);
        if (name == "Point") return ManifoldExpr::atom(AtomKind::Point);

        AtomKind kind;
        if (name == "S")
            kind = AtomKind::Sphere;
        else if (name == "T")
            kind = AtomKind::Torus;
        else if (name == "RP")
            kind = AtomKind::RealProjective;
        else if (name == "CP")
            kind = AtomKind::ComplexProjective;
        else if (name == "SU")
            kind = AtomKind::SpecialUnitary;
        else if (name == "SigmaD")
            kind = AtomKind::DegreeHypersurface;
        else
            throw UnknownAtom("unknown atom '" + name + "'", start);

        expect('(', "'('");
        skip_ws();
        std::size_t int_at = pos_;
        if (pos_ >= text_.size() ||
            !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("expected an unsigned integer parameter", pos_);
        long long value = 0;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1000000) throw ParseError("atom parameter too large", int_at);
            ++pos_;
        }
        expect(')', "')'");
        if (value < 1) throw ParseError("atom parameter must be >= 1", int_at);
        return ManifoldExpr::atom(kind, static_cast<int>(value));
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

ManifoldExpr parse_manifold_expr(const std::string& text) {
    return ExprParser(text).parse();
}

// ---------------------------------------------------------------------------
// Atom catalog

namespace {

// Binomial coefficient, exact; parameters stay tiny (n <= ~35 in practice
// because atom dimensions bound everything).
long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

struct RingData {
    std::vector<ClassGenerator> generators;
    std::vector<int> top;  // exponents of the fundamental pairing monomial
    GradedClass sw;        // total Stiefel-Whitney class, Z/2 coefficients
    GradedClass pont;      // total Pontryagin class
    // When false the Pontryagin class above has 2-torsion coefficients (it
    // is stored in a Z/2 ring) and cannot enter product formulas.
    bool torsion_free = true;

    RingData() : sw(CoeffRing::Z2, {}, 0), pont(CoeffRing::Z, {}, 0) {}
};

struct TableData {
    std::map<std::string, int> sw_numbers;  // complete for the dimension
    // Present iff the dimension is divisible by four and the numbers are
    // actually known; Wu stores an absent optional only in dimension terms
    // (dim 5 has no Pontryagin numbers, so it stores an empty map).
    std::optional<std::map<std::string, long long>> pont_numbers;
    bool sw_square_trivial = false;
    bool pontrjagin_trivial = false;
};

struct AtomData {
    std::string display;
    int dimension = 0;
    bool orientable = true;
    long long euler = 0;
    bool stably_parallelizable = false;
    std::optional<RingData> ring;
    std::optional<TableData> table;
};

// (1 + g^power)^exponent in a one-generator truncated ring.
GradedClass binomial_total_class(CoeffRing ring, const ClassGenerator& gen,
                                 int truncation, int power, int exponent) {
    GradedClass c(ring, {gen}, truncation);
    for (int k = 0; k * power * gen.degree <= truncation && k <= exponent; ++k)
        c.add_term({k * power}, binomial(exponent, k));
    return c;
}

AtomData point_like(const std::string& display) {
    AtomData d;
    d.display = display;
    d.dimension = 0;
    d.euler = 1;
    d.stably_parallelizable = true;
    RingData r;
    r.sw = GradedClass::unit(CoeffRing::Z2, {}, 0);
    r.pont = GradedClass::unit(CoeffRing::Z, {}, 0);
    r.top = {};
    d.ring = std::move(r);
    return d;
}

AtomData sphere_data(int n) {
    AtomData d;
    d.display = "S(" + std::to_string(n) + ")";
    d.dimension = n;
    d.euler = (n % 2 == 0) ? 2 : 0;
    d.stably_parallelizable = true;
    RingData r;
    ClassGenerator g{"x", n, 2};
    r.generators = {g};
    r.top = {1};
    r.sw = GradedClass::unit(CoeffRing::Z2, {g}, n);
    r.pont = GradedClass::unit(CoeffRing::Z, {g}, n);
    d.ring = std::move(r);
    return d;
}

AtomData torus_data(int n) {
    AtomData d;
    d.display = "T(" + std::to_string(n) + ")";
    d.dimension = n;
    d.euler = 0;
    d.stably_parallelizable = true;
    RingData r;
    for (int i = 1; i <= n; ++i)
        r.generators.push_back({"t" + std::to_string(i), 1, 2});
    r.top.assign(static_cast<std::size_t>(n), 1);
    r.sw = GradedClass::unit(CoeffRing::Z2, r.generators, n);
    r.pont = GradedClass::unit(CoeffRing::Z, r.generators, n);
    d.ring = std::move(r);
    return d;
}

AtomData real_projective_data(int n) {
    AtomData d;
    d.display = "RP(" + std::to_string(n) + ")";
    d.dimension = n;
    d.orientable = (n % 2 == 1);
    d.euler = (n % 2 == 0) ? 1 : 0;
    d.stably_parallelizable = (n == 1 || n == 3 || n == 7);
    RingData r;
    ClassGenerator a{"a", 1, n + 1};
    r.generators = {a};
    r.top = {n};
    r.sw = binomial_total_class(CoeffRing::Z2, a, n, 1, n + 1);
    r.torsion_free = (n <= 1);
    if (r.torsion_free) {
        r.pont = binomial_total_class(CoeffRing::Z, a, n, 2, n + 1);
    } else {
        // The integral cohomology in degrees 4k is 2-torsion, so the class
        // is recorded with Z/2 coefficients and stays out of products.
        r.pont = binomial_total_class(CoeffRing::Z2, a, n, 2, n + 1);
    }
    d.ring = std::move(r);
    return d;
}

AtomData complex_projective_data(int n) {
    AtomData d;
    d.display = "CP(" + std::to_string(n) + ")";
    d.dimension = 2 * n;
    d.euler = n + 1;
    RingData r;
    ClassGenerator a{"a", 2, n + 1};
    r.generators = {a};
    r.top = {n};
    r.sw = binomial_total_class(CoeffRing::Z2, a, 2 * n, 1, n + 1);
    r.pont = binomial_total_class(CoeffRing::Z, a, 2 * n, 2, n + 1);
    d.ring = std::move(r);
    return d;
}

AtomData special_unitary_data(int n) {
    if (n == 1) return point_like("SU(1)");
    AtomData d;
    d.display = "SU(" + std::to_string(n) + ")";
    d.dimension = n * n - 1;
    d.euler = 0;
    d.stably_parallelizable = true;  // Lie groups are parallelizable
    RingData r;
    for (int k = 2; k <= n; ++k)
        r.generators.push_back({"x" + std::to_string(2 * k - 1), 2 * k - 1, 2});
    r.top.assign(r.generators.size(), 1);
    r.sw = GradedClass::unit(CoeffRing::Z2, r.generators, d.dimension);
    r.pont = GradedClass::unit(CoeffRing::Z, r.generators, d.dimension);
    d.ring = std::move(r);
    return d;
}

// Canonical monomial keys of total degree n in letters indexed 1..n, where
// letter i carries degree weight*i. Used for both w (weight 1) and p
// (weight 4, indices bounded by n/4).
std::vector<std::string> monomial_keys(const std::string& letter, int degree,
                                       int weight);

std::string format_key(const std::string& letter, const std::vector<int>& exp) {
    std::string key;
    for (std::size_t i = 0; i < exp.size(); ++i) {
        if (exp[i] == 0) continue;
        if (!key.empty()) key += " ";
        key += letter + std::to_string(i + 1);
        if (exp[i] > 1) key += "^" + std::to_string(exp[i]);
    }
    return key.empty() ? "1" : key;
}

void enumerate_exponents(int remaining, int index, std::vector<int>& exp,
                         const std::function<void(const std::vector<int>&)>& emit) {
    if (index == 0) {
        if (remaining == 0) emit(exp);
        return;
    }
    for (int e = 0; e * index <= remaining; ++e) {
        exp[static_cast<std::size_t>(index - 1)] = e;
        enumerate_exponents(remaining - e * index, index - 1, exp, emit);
    }
    exp[static_cast<std::size_t>(index - 1)] = 0;
}

std::vector<std::vector<int>> all_multidegrees(int total) {
    std::vector<std::vector<int>> out;
    std::vector<int> exp(static_cast<std::size_t>(total), 0);
    if (total == 0) {
        out.push_back({});
        return out;
    }
    enumerate_exponents(total, total, exp,
                        [&](const std::vector<int>& e) { out.push_back(e); });
    return out;
}

std::vector<std::string> monomial_keys(const std::string& letter, int degree,
                                       int weight) {
    std::vector<std::string> keys;
    if (degree % weight != 0) return keys;
    for (const auto& e : all_multidegrees(degree / weight))
        keys.push_back(format_key(letter, e));
    return keys;
}

AtomData wu_data() {
    AtomData d;
    d.display = "Wu";
    d.dimension = 5;
    d.orientable = true;
    d.euler = 0;
    TableData t;
    for (const auto& key : monomial_keys("w", 5, 1)) t.sw_numbers[key] = 0;
    t.sw_numbers["w2 w3"] = 1;
    t.pont_numbers.emplace();  // dimension 5: no partition monomials exist
    // w = 1 + w2 + w3 squares to 1 + w2^2, and the degree-4 cohomology
    // vanishes (the manifold is simply connected, so Poincare duality kills
    // H^4), hence w^2 = 1 and p = 1.
    t.sw_square_trivial = true;
    t.pontrjagin_trivial = true;
    d.table = std::move(t);
    return d;
}

AtomData hypersurface_data(int deg) {
    AtomData d;
    long long dd = deg;
    d.display = "SigmaD(" + std::to_string(deg) + ")";
    d.dimension = 4;
    d.orientable = true;
    d.euler = dd * dd * dd - 4 * dd * dd + 6 * dd;
    TableData t;
    for (const auto& key : monomial_keys("w", 4, 1)) t.sw_numbers[key] = 0;
    // Orientable, so w1 kills everything but w2^2 and w4; both equal the
    // Euler characteristic mod 2, which is d mod 2.
    t.sw_numbers["w2^2"] = static_cast<int>(dd % 2);
    t.sw_numbers["w4"] = static_cast<int>(dd % 2);
    t.pont_numbers.emplace();
    (*t.pont_numbers)["p1"] = (4 - dd * dd) * dd;
    t.sw_square_trivial = (dd % 2 == 0);
    t.pontrjagin_trivial = (deg == 2);
    d.table = std::move(t);
    return d;
}

AtomData atom_data(const Atom& a) {
    switch (a.kind) {
        case AtomKind::Point: return point_like("Point");
        case AtomKind::Sphere: return sphere_data(a.param);
        case AtomKind::Torus: return torus_data(a.param);
        case AtomKind::RealProjective: return real_projective_data(a.param);
        case AtomKind::ComplexProjective: return complex_projective_data(a.param);
        case AtomKind::SpecialUnitary: return special_unitary_data(a.param);
        case AtomKind::WuManifold: return wu_data();
        case AtomKind::DegreeHypersurface: return hypersurface_data(a.param);
    }
    throw InvalidArgument("unknown atom kind");
}

// ---------------------------------------------------------------------------
// Normalization to signed components

struct Component {
    int sign = 1;  // -1 after orientation reversal
    std::vector<Atom> atoms;
    int dimension = 0;
};

void collect_components(const ManifoldExpr& e, int sign, std::vector<Component>& out) {
    switch (e.node()) {
        case ManifoldExpr::Node::Atom:
            out.push_back(Component{sign, {e.atom_value()}, e.dimension()});
            return;
        case ManifoldExpr::Node::Reverse:
            collect_components(e.children()[0], -sign, out);
            return;
        case ManifoldExpr::Node::DisjointUnion:
            collect_components(e.children()[0], sign, out);
            collect_components(e.children()[1], sign, out);
            return;
        case ManifoldExpr::Node::Product: {
            std::vector<Component> lhs, rhs;
            collect_components(e.children()[0], 1, lhs);
            collect_components(e.children()[1], 1, rhs);
            for (const auto& l : lhs)
                for (const auto& r : rhs) {
                    Component c;
                    c.sign = sign * l.sign * r.sign;
                    c.atoms = l.atoms;
                    c.atoms.insert(c.atoms.end(), r.atoms.begin(), r.atoms.end());
                    c.dimension = l.dimension + r.dimension;
                    out.push_back(std::move(c));
                }
            return;
        }
    }
}

std::vector<Component> components(const ManifoldExpr& e) {
    std::vector<Component> out;
    collect_components(e, 1, out);
    return out;
}

// Tensor-ring data for a component whose atoms all carry ring models.
struct ComponentRing {
    std::vector<ClassGenerator> generators;
    std::vector<int> top;
    GradedClass sw;
    GradedClass pont;
    bool pont_usable = true;  // all factors torsion-free
    int dimension = 0;

    ComponentRing() : sw(CoeffRing::Z2, {}, 0), pont(CoeffRing::Z, {}, 0) {}
};

GradedClass lift_factor(const GradedClass& src,
                        const std::vector<ClassGenerator>& gens, int truncation,
                        std::size_t offset, std::size_t width, CoeffRing ring) {
    GradedClass out(ring, gens, truncation);
    std::vector<int> exp(gens.size(), 0);
    for (const auto& [e, c] : src.terms()) {
        std::fill(exp.begin(), exp.end(), 0);
        for (std::size_t i = 0; i < width; ++i) exp[offset + i] = e[i];
        out.add_term(exp, c);
    }
    return out;
}

ComponentRing build_component_ring(const Component& comp,
                                   const std::vector<AtomData>& data) {
    ComponentRing ring;
    ring.dimension = comp.dimension;

    std::set<std::string> used;
    for (const auto& d : data)
        for (const auto& g : d.ring->generators) {
            std::string name = g.name;
            for (int suffix = 2; used.count(name); ++suffix)
                name = g.name + "_" + std::to_string(suffix);
            used.insert(name);
            ring.generators.push_back({name, g.degree, g.cap});
        }
    for (const auto& d : data) {
        ring.top.insert(ring.top.end(), d.ring->top.begin(), d.ring->top.end());
        if (!d.ring->torsion_free) ring.pont_usable = false;
    }

    ring.sw = GradedClass::unit(CoeffRing::Z2, ring.generators, ring.dimension);
    std::size_t offset = 0;
    for (const auto& d : data) {
        std::size_t width = d.ring->generators.size();
        ring.sw = ring.sw.multiplied_by(lift_factor(
            d.ring->sw, ring.generators, ring.dimension, offset, width, CoeffRing::Z2));
        offset += width;
    }

    if (ring.pont_usable) {
        ring.pont = GradedClass::unit(CoeffRing::Z, ring.generators, ring.dimension);
        offset = 0;
        for (const auto& d : data) {
            std::size_t width = d.ring->generators.size();
            ring.pont = ring.pont.multiplied_by(
                lift_factor(d.ring->pont, ring.generators, ring.dimension, offset,
                            width, CoeffRing::Z));
            offset += width;
        }
    }
    return ring;
}

std::vector<AtomData> component_atom_data(const Component& comp) {
    std::vector<AtomData> out;
    out.reserve(comp.atoms.size());
    for (const auto& a : comp.atoms) out.push_back(atom_data(a));
    return out;
}

bool all_ring(const std::vector<AtomData>& data) {
    return std::all_of(data.begin(), data.end(),
                       [](const AtomData& d) { return d.ring.has_value(); });
}

// A component is number-computable when it is all-ring or a lone table atom.
const TableData* lone_table(const std::vector<AtomData>& data) {
    if (data.size() == 1 && data[0].table) return &*data[0].table;
    return nullptr;
}

std::string no_ring_message(const std::vector<AtomData>& data) {
    for (const auto& d : data)
        if (!d.ring)
            return d.display + " carries only a table of characteristic numbers, "
                               "not a cohomology ring model";
    return "component has no ring model";
}

// Pairing of a graded class against the fundamental monomial.
long long pair_top(const GradedClass& c, const std::vector<int>& top) {
    return c.coeff(top);
}

// Characteristic numbers of an all-ring component: for each canonical
// degree-n monomial in the letter classes, multiply out in the truncated
// tensor ring and pair with the top monomial.
template <typename Value>
std::map<std::string, Value> ring_numbers(const ComponentRing& ring,
                                          const GradedClass& total,
                                          const std::vector<int>& top, int weight) {
    std::map<std::string, Value> out;
    int dim = ring.dimension;
    if (dim % weight != 0) return out;
    int parts = dim / weight;

    std::vector<GradedClass> letter;  // letter[i] = degree weight*(i+1) part
    for (int i = 1; i <= parts; ++i)
        letter.push_back(total.homogeneous_part(weight * i));

    GradedClass one = GradedClass::unit(total.ring(), total.generators(),
                                        total.truncation());
    std::vector<int> exp(static_cast<std::size_t>(parts), 0);
    if (parts == 0) {
        out["1"] = static_cast<Value>(pair_top(one, top));
        return out;
    }
    enumerate_exponents(parts, parts, exp, [&](const std::vector<int>& e) {
        GradedClass prod = one;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) {
                if (prod.is_zero()) break;
                prod = prod.multiplied_by(letter[i]);
            }
        out[format_key(weight == 1 ? "w" : "p", e)] =
            static_cast<Value>(pair_top(prod, top));
    });
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public operations

std::vector<GradedClass> total_sw_class(const ManifoldExpr& e) {
    std::vector<GradedClass> out;
    for (const auto& comp : components(e)) {
        auto data = component_atom_data(comp);
        if (!all_ring(data)) throw NoRingModel(no_ring_message(data));
        out.push_back(build_component_ring(comp, data).sw);
    }
    return out;
}

std::map<std::string, int> sw_numbers(const ManifoldExpr& e) {
    std::map<std::string, int> acc;
    for (const auto& key : monomial_keys("w", e.dimension(), 1)) acc[key] = 0;
    for (const auto& comp : components(e)) {
        auto data = component_atom_data(comp);
        std::map<std::string, int> part;
        if (const TableData* t = lone_table(data)) {
            part = t->sw_numbers;
        } else if (all_ring(data)) {
            ComponentRing ring = build_component_ring(comp, data);
            part = ring_numbers<int>(ring, ring.sw, ring.top, 1);
        } else {
            throw NoRingModel(no_ring_message(data));
        }
        for (const auto& [key, value] : part) acc[key] = (acc[key] + value) % 2;
    }
    return acc;
}

std::map<std::string, long long> pontrjagin_numbers(const ManifoldExpr& e) {
    if (e.dimension() % 4 != 0)
        throw Unsupported("Pontryagin numbers need dimension divisible by 4, got " +
                          std::to_string(e.dimension()));
    std::map<std::string, long long> acc;
    for (const auto& key : monomial_keys("p", e.dimension(), 4)) acc[key] = 0;
    for (const auto& comp : components(e)) {
        auto data = component_atom_data(comp);
        for (const auto& d : data)
            if (!d.orientable)
                throw Unsupported(d.display + " is not orientable");
        std::map<std::string, long long> part;
        if (const TableData* t = lone_table(data)) {
            if (!t->pont_numbers)
                throw Unsupported("no Pontryagin data stored for " + data[0].display);
            part = *t->pont_numbers;
        } else if (all_ring(data)) {
            ComponentRing ring = build_component_ring(comp, data);
            if (!ring.pont_usable)
                throw Unsupported(
                    "a factor has torsion in its integral cohomology, so the "
                    "product formula for Pontryagin classes does not apply");
            part = ring_numbers<long long>(ring, ring.pont, ring.top, 4);
        } else {
            throw Unsupported(no_ring_message(data));
        }
        for (const auto& [key, value] : part) acc[key] += comp.sign * value;
    }
    return acc;
}

CobordismVerdict is_nullcobordant(const ManifoldExpr& e) {
    for (const auto& comp : components(e))
        for (const auto& a : comp.atoms) {
            AtomData d = atom_data(a);
            if (!d.orientable)
                throw NonOrientable(d.display + " is not orientable");
        }

    std::map<std::string, int> sw;
    try {
        sw = sw_numbers(e);
    } catch (const NoRingModel&) {
        return {CobordismVerdict::Kind::Undecided, "missing data"};
    }
    for (const auto& [key, value] : sw)
        if (value != 0) return {CobordismVerdict::Kind::DoesNotBound, key};

    if (e.dimension() % 4 == 0) {
        std::map<std::string, long long> pont;
        try {
            pont = pontrjagin_numbers(e);
        } catch (const Unsupported&) {
            return {CobordismVerdict::Kind::Undecided, "missing data"};
        }
        for (const auto& [key, value] : pont)
            if (value != 0) return {CobordismVerdict::Kind::DoesNotBound, key};
    }
    return {CobordismVerdict::Kind::Bounds, ""};
}

ImmersionReport lagrangian_immersion_obstructions(const ManifoldExpr& e) {
    ImmersionReport report;
    report.sw_square_ok = true;
    report.pontrjagin_trivial_ok = true;
    std::string sw_reason, pont_reason;

    // Both tests factor across products (total classes tensor, and a tensor
    // of unital classes is 1 exactly when every factor is), so each atom is
    // checked in its own ring or against its stored flags.
    for (const auto& comp : components(e)) {
        for (const auto& a : comp.atoms) {
            AtomData d = atom_data(a);
            bool sw_ok, pont_ok;
            if (d.ring) {
                sw_ok = d.ring->sw.squared().is_unit();
                pont_ok = d.ring->pont.is_unit();
            } else {
                sw_ok = d.table->sw_square_trivial;
                pont_ok = d.table->pontrjagin_trivial;
            }
            if (!sw_ok && report.sw_square_ok) {
                report.sw_square_ok = false;
                sw_reason = "w^2 != 1 for " + d.display;
            }
            if (!pont_ok && report.pontrjagin_trivial_ok) {
                report.pontrjagin_trivial_ok = false;
                pont_reason = "p != 1 for " + d.display;
            }
        }
    }

    report.obstructed = !(report.sw_square_ok && report.pontrjagin_trivial_ok);
    if (report.obstructed) {
        report.reason = sw_reason;
        if (!pont_reason.empty()) {
            if (!report.reason.empty()) report.reason += "; ";
            report.reason += pont_reason;
        }
    }

    auto comps = components(e);
    if (!report.obstructed && comps.size() == 1 && comps[0].atoms.size() == 1) {
        AtomData d = atom_data(comps[0].atoms[0]);
        if (d.stably_parallelizable)
            report.existence_note =
                d.display + " has stably trivial tangent bundle, so its "
                            "complexified tangent bundle is trivial and a "
                            "Lagrangian immersion into C^n exists";
    }
    return report;
}

EulerReport euler_embedding_obstruction(const ManifoldExpr& e) {
    std::function<long long(const ManifoldExpr&)> chi =
        [&](const ManifoldExpr& x) -> long long {
        switch (x.node()) {
            case ManifoldExpr::Node::Atom: return atom_data(x.atom_value()).euler;
            case ManifoldExpr::Node::Product:
                return chi(x.children()[0]) * chi(x.children()[1]);
            case ManifoldExpr::Node::DisjointUnion:
                return chi(x.children()[0]) + chi(x.children()[1]);
            case ManifoldExpr::Node::Reverse: return chi(x.children()[0]);
        }
        return 0;
    };

    EulerReport report;
    report.chi = chi(e);
    report.embedding_possible = (report.chi == 0);
    if (report.embedding_possible)
        report.advisory =
            "chi == 0 removes only the Euler obstruction; a closed exact "
            "Lagrangian submanifold of complex Euclidean space does not exist "
            "by Gromov's theorem, so only immersed or non-exact realizations "
            "remain possible";
    return report;
}

}  // namespace slaglab
