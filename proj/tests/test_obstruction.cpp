#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "slaglab/obstruction.hpp"
#include "slaglab/rng.hpp"

using namespace slaglab;

namespace {

// Boundary data of the flat disk in complex dimension 2: the filling has no
// first cohomology, the boundary circle one copy of Z.
PbpInstance disk2(long long mu, bool connected = true) {
    PbpInstance inst;
    inst.n = 2;
    inst.sigma_connected = connected;
    inst.h1_l = FgAbelianGroup::trivial();
    inst.h1_sigma = FgAbelianGroup::free(1);
    inst.i1 = GroupHom::zero(inst.h1_l, inst.h1_sigma);
    inst.maslov_class = {mu};
    return inst;
}

// Dimension-3 instance where the restriction map hits only the first
// generator of H^1 of the boundary.
PbpInstance lift3(std::vector<long long> mu) {
    PbpInstance inst;
    inst.n = 3;
    inst.h1_l = FgAbelianGroup::free(1);
    inst.h1_sigma = FgAbelianGroup::free(2);
    inst.i1 = GroupHom(inst.h1_l, inst.h1_sigma, IntegerMatrix(2, 1, {1, 0}));
    inst.maslov_class = std::move(mu);
    return inst;
}

// Higher-dimensional instance whose degree-1 layer passes trivially, so the
// verdict rides on the degree-3 class alone.
PbpInstance deg3(int n, std::vector<long long> theta, bool connected) {
    PbpInstance inst;
    inst.n = n;
    inst.sigma_connected = connected;
    inst.h3_l = FgAbelianGroup::free(1);
    inst.h3_sigma = FgAbelianGroup::free(2);
    inst.i3 = GroupHom(*inst.h3_l, *inst.h3_sigma,
                       IntegerMatrix(2, 1, {1, 0}));
    inst.su_class = std::move(theta);
    return inst;
}

bool is_solvable(const PbpVerdict& v) {
    return std::holds_alternative<Solvable>(v);
}

FailedCondition failure_of(const PbpVerdict& v) {
    return std::get<Unsolvable>(v).failed_condition;
}

// Collapses a verdict to a comparable code, separating the Maslov-zero flag.
int verdict_code(const PbpVerdict& v) {
    if (const auto* s = std::get_if<Solvable>(&v))
        return s->maslov_zero_possible ? 2 : 1;
    if (std::holds_alternative<Unsolvable>(v)) return 0;
    return 3;
}

// Exhaustive image membership for homs into finite groups: coefficients of
// the preimage only matter modulo the codomain exponent.
bool oracle_in_image(const GroupHom& h, const std::vector<long long>& y) {
    const FgAbelianGroup& cod = h.codomain();
    REQUIRE(cod.rank() == 0);
    long long exponent = 1;
    for (long long k : cod.torsion()) exponent = std::lcm(exponent, k);
    std::vector<long long> target = cod.reduce(y);
    int g = h.domain().generators();
    std::vector<long long> x(static_cast<std::size_t>(g), 0);
    while (true) {
        if (cod.reduce(h.apply(x)) == target) return true;
        int i = 0;
        for (; i < g; ++i) {
            if (++x[static_cast<std::size_t>(i)] < exponent) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
        if (i == g) return false;
    }
}

const std::vector<std::vector<long long>> kTorsionPool = {
    {}, {2}, {3}, {4}, {2, 2}, {2, 4}, {3, 6}, {2, 6}};

// Random instance with a finite boundary group, so the oracle above is exact.
PbpInstance random_finite_instance(Rng& rng, int n) {
    PbpInstance inst;
    inst.n = n;
    inst.sigma_connected = rng.integer(0, 1) == 1;
    const auto& tor = kTorsionPool[static_cast<std::size_t>(
        rng.integer(0, static_cast<long long>(kTorsionPool.size()) - 1))];
    inst.h1_sigma = FgAbelianGroup(0, tor);
    inst.h1_l = FgAbelianGroup::free(static_cast<int>(rng.integer(0, 2)));
    int rows = inst.h1_sigma.generators();
    int cols = inst.h1_l.generators();
    std::vector<long long> entries(static_cast<std::size_t>(rows * cols));
    for (auto& e : entries) e = rng.integer(-5, 5);
    inst.i1 = GroupHom(inst.h1_l, inst.h1_sigma,
                       IntegerMatrix(rows, cols, std::move(entries)));
    inst.maslov_class.resize(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i)
        inst.maslov_class[static_cast<std::size_t>(i)] =
            rng.integer(0, tor[static_cast<std::size_t>(i)] - 1);
    return inst;
}

std::array<long long, 4> mat_mul(const std::array<long long, 4>& a,
                                 const std::array<long long, 4>& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

}  // namespace

TEST_CASE("disk shortcut by parity") {
    CHECK(decide_disk(2) == DiskVerdict::ConditionalOnMaslov);
    CHECK(decide_disk(3) == DiskVerdict::AlwaysSolvable);
    CHECK(decide_disk(4) == DiskVerdict::ReducesToUnitaryObstruction);
    CHECK(decide_disk(5) == DiskVerdict::AlwaysSolvable);
    CHECK(decide_disk(6) == DiskVerdict::ReducesToUnitaryObstruction);
    CHECK(decide_disk(7) == DiskVerdict::AlwaysSolvable);
    CHECK_THROWS_AS(decide_disk(1), InvalidArgument);
    CHECK_THROWS_AS(decide_disk(0), InvalidArgument);
    CHECK(to_string(DiskVerdict::AlwaysSolvable) == "always solvable");
}

TEST_CASE("dimension 2 disk data solvable exactly at Maslov zero") {
    for (long long mu = -3; mu <= 3; ++mu) {
        CAPTURE(mu);
        PbpVerdict v = decide_pbp(disk2(mu));
        if (mu == 0) {
            REQUIRE(is_solvable(v));
            CHECK(std::get<Solvable>(v).maslov_zero_possible);
        } else {
            REQUIRE_FALSE(is_solvable(v));
            CHECK(failure_of(v) == FailedCondition::Maslov);
        }
        // With disconnected boundary the image rule gives the same answer
        // here, because nothing restricts from the disk.
        CHECK(is_solvable(decide_pbp(disk2(mu, false))) == (mu == 0));
    }
}

TEST_CASE("dimension 3 lifts through the restriction map") {
    PbpVerdict hit = decide_pbp(lift3({1, 0}));
    REQUIRE(is_solvable(hit));
    CHECK_FALSE(std::get<Solvable>(hit).maslov_zero_possible);

    PbpVerdict miss = decide_pbp(lift3({0, 1}));
    REQUIRE_FALSE(is_solvable(miss));
    CHECK(failure_of(miss) == FailedCondition::Maslov);

    PbpVerdict zero = decide_pbp(lift3({0, 0}));
    REQUIRE(is_solvable(zero));
    CHECK(std::get<Solvable>(zero).maslov_zero_possible);

    CHECK(is_solvable(decide_pbp(lift3({7, 0}))));
    CHECK_FALSE(is_solvable(decide_pbp(lift3({2, 3}))));
}

TEST_CASE("dimensions 4 and 5 add the degree-3 condition") {
    // Disconnected boundary: membership in the image decides.
    CHECK(is_solvable(decide_pbp(deg3(5, {1, 0}, false))));
    PbpVerdict v5 = decide_pbp(deg3(5, {0, 1}, false));
    REQUIRE_FALSE(is_solvable(v5));
    CHECK(failure_of(v5) == FailedCondition::SuClass);

    CHECK(is_solvable(decide_pbp(deg3(4, {1, 0}, false))));

    // Connected boundary at n = 4 upgrades membership to vanishing.
    PbpVerdict v4 = decide_pbp(deg3(4, {1, 0}, true));
    REQUIRE_FALSE(is_solvable(v4));
    CHECK(failure_of(v4) == FailedCondition::SuClass);
    CHECK(is_solvable(decide_pbp(deg3(4, {0, 0}, true))));

    // n = 5 has no such upgrade.
    CHECK(is_solvable(decide_pbp(deg3(5, {1, 0}, true))));

    // When both layers fail, the degree-1 failure is reported.
    PbpInstance both = deg3(4, {0, 1}, false);
    both.h1_sigma = FgAbelianGroup::free(1);
    both.i1 = GroupHom::zero(both.h1_l, both.h1_sigma);
    both.maslov_class = {2};
    PbpVerdict vb = decide_pbp(both);
    REQUIRE_FALSE(is_solvable(vb));
    CHECK(failure_of(vb) == FailedCondition::Maslov);

    // Missing degree-3 data is an error even when degree 1 already fails.
    PbpInstance missing = disk2(1);
    missing.n = 4;
    CHECK_THROWS_AS(decide_pbp(missing), MissingField);
    missing.n = 5;
    CHECK_THROWS_AS(decide_pbp(missing), MissingField);
}

TEST_CASE("dimension 6 and beyond is out of reach") {
    PbpInstance inst = disk2(0);
    inst.n = 6;
    PbpVerdict v = decide_pbp(inst);
    REQUIRE(std::holds_alternative<Undecided>(v));
    CHECK(std::get<Undecided>(v).reason.find("dimension") != std::string::npos);
    inst.n = 9;
    CHECK(std::holds_alternative<Undecided>(decide_pbp(inst)));
}

TEST_CASE("instance screening errors") {
    PbpInstance inst = disk2(0);
    inst.exact_data = false;
    CHECK_THROWS_AS(decide_pbp(inst), NotExact);

    inst = disk2(0);
    inst.l_orientable = false;
    CHECK_THROWS_AS(decide_pbp(inst), NotOrientable);

    inst = disk2(0);
    inst.n = 1;
    CHECK_THROWS_AS(decide_pbp(inst), InvalidArgument);

    inst = disk2(0);
    inst.maslov_class = {0, 0};
    CHECK_THROWS_AS(decide_pbp(inst), ElementShapeMismatch);

    inst = disk2(0);
    inst.h1_l = FgAbelianGroup::free(3);  // i1 still maps from the old group
    CHECK_THROWS_AS(decide_pbp(inst), InvalidArgument);
}

TEST_CASE("verdicts agree with the exhaustive oracle") {
    Rng rng(42);
    int solvable_seen = 0;
    int unsolvable_seen = 0;
    for (int trial = 0; trial < 500; ++trial) {
        int n = rng.integer(0, 1) == 0 ? 2 : 3;
        PbpInstance inst = random_finite_instance(rng, n);
        if (trial % 7 == 0)
            std::fill(inst.maslov_class.begin(), inst.maslov_class.end(), 0);
        CAPTURE(trial);

        bool expected =
            (inst.n == 2 && inst.sigma_connected)
                ? inst.h1_sigma.is_zero(inst.maslov_class)
                : oracle_in_image(inst.i1, inst.maslov_class);
        PbpVerdict v = decide_pbp(inst);
        REQUIRE(is_solvable(v) == expected);
        if (expected) {
            ++solvable_seen;
            CHECK(std::get<Solvable>(v).maslov_zero_possible ==
                  inst.h1_sigma.is_zero(inst.maslov_class));
        } else {
            ++unsolvable_seen;
            CHECK(failure_of(v) == FailedCondition::Maslov);
        }
    }
    // The draw must exercise both outcomes heavily for the check to mean
    // anything.
    CHECK(solvable_seen > 100);
    CHECK(unsolvable_seen > 100);
}

TEST_CASE("degree-3 layer agrees with the oracle") {
    Rng rng(43);
    for (int trial = 0; trial < 150; ++trial) {
        int n = rng.integer(0, 1) == 0 ? 4 : 5;
        PbpInstance shape = random_finite_instance(rng, n);
        PbpInstance inst;
        inst.n = n;
        inst.sigma_connected = shape.sigma_connected;
        inst.h3_l = shape.h1_l;
        inst.h3_sigma = shape.h1_sigma;
        inst.i3 = shape.i1;
        inst.su_class = shape.maslov_class;
        CAPTURE(trial);

        bool expected = (n == 4 && inst.sigma_connected)
                            ? inst.h3_sigma->is_zero(*inst.su_class)
                            : oracle_in_image(*inst.i3, *inst.su_class);
        PbpVerdict v = decide_pbp(inst);
        CHECK(is_solvable(v) == expected);
        if (!expected) CHECK(failure_of(v) == FailedCondition::SuClass);
    }
}

TEST_CASE("connected-boundary rules only remove solutions") {
    Rng rng(44);
    int strengthened_solvable = 0;
    for (int trial = 0; trial < 200; ++trial) {
        PbpInstance inst = random_finite_instance(rng, 2);
        if (trial % 5 == 0)
            std::fill(inst.maslov_class.begin(), inst.maslov_class.end(), 0);
        inst.sigma_connected = true;
        PbpVerdict strong = decide_pbp(inst);
        inst.sigma_connected = false;
        PbpVerdict general = decide_pbp(inst);
        if (is_solvable(strong)) {
            ++strengthened_solvable;
            CHECK(is_solvable(general));
        }
    }
    CHECK(strengthened_solvable > 20);

    for (int trial = 0; trial < 100; ++trial) {
        PbpInstance shape = random_finite_instance(rng, 2);
        PbpInstance inst;
        inst.n = 4;
        inst.h3_l = shape.h1_l;
        inst.h3_sigma = shape.h1_sigma;
        inst.i3 = shape.i1;
        inst.su_class = shape.maslov_class;
        inst.sigma_connected = true;
        PbpVerdict strong = decide_pbp(inst);
        inst.sigma_connected = false;
        PbpVerdict general = decide_pbp(inst);
        if (is_solvable(strong)) CHECK(is_solvable(general));
    }
}

TEST_CASE("verdicts survive a change of basis") {
    Rng rng(45);
    for (int trial = 0; trial < 100; ++trial) {
        // Random instance over a free rank-2 boundary group.
        PbpInstance inst;
        inst.n = 3;
        inst.h1_l = FgAbelianGroup::free(2);
        inst.h1_sigma = FgAbelianGroup::free(2);
        std::array<long long, 4> m;
        for (auto& e : m) e = rng.integer(-4, 4);
        inst.i1 = GroupHom(inst.h1_l, inst.h1_sigma,
                           IntegerMatrix(2, 2, {m[0], m[1], m[2], m[3]}));
        inst.maslov_class = {rng.integer(-4, 4), rng.integer(-4, 4)};

        // Random element of SL(2, Z) from shears and the quarter turn.
        std::array<long long, 4> u = {1, 0, 0, 1};
        for (int s = 0; s < 6; ++s) {
            long long k = rng.integer(-3, 3);
            switch (rng.integer(0, 2)) {
                case 0: u = mat_mul(u, {1, k, 0, 1}); break;
                case 1: u = mat_mul(u, {1, 0, k, 1}); break;
                default: u = mat_mul(u, {0, 1, -1, 0}); break;
            }
        }

        PbpInstance moved = inst;
        std::array<long long, 4> um = mat_mul(u, m);
        moved.i1 = GroupHom(moved.h1_l, moved.h1_sigma,
                            IntegerMatrix(2, 2, {um[0], um[1], um[2], um[3]}));
        moved.maslov_class = {
            u[0] * inst.maslov_class[0] + u[1] * inst.maslov_class[1],
            u[2] * inst.maslov_class[0] + u[3] * inst.maslov_class[1]};

        CAPTURE(trial);
        CHECK(verdict_code(decide_pbp(inst)) ==
              verdict_code(decide_pbp(moved)));
    }
}

TEST_CASE("extension counting") {
    PbpInstance d2 = disk2(0);
    d2.h1_rel = FgAbelianGroup::trivial();
    CHECK(count_extensions(d2) == FgAbelianGroup::trivial());

    PbpInstance d3;
    d3.n = 3;
    d3.h1_rel = FgAbelianGroup::trivial();
    CHECK(count_extensions(d3) == FgAbelianGroup::free(1));

    PbpInstance rich = lift3({0, 0});
    rich.h1_rel = FgAbelianGroup::free(1);
    CHECK(count_extensions(rich) == FgAbelianGroup::free(2));

    rich.h1_rel = FgAbelianGroup(1, {2});
    CHECK(count_extensions(rich) == FgAbelianGroup(2, {2}));

    PbpInstance no_rel = lift3({0, 0});
    CHECK_THROWS_AS(count_extensions(no_rel), MissingField);

    PbpInstance wrong_dim = deg3(4, {0, 0}, false);
    wrong_dim.h1_rel = FgAbelianGroup::trivial();
    CHECK_THROWS_AS(count_extensions(wrong_dim), UnsupportedDimension);

    PbpInstance stuck = disk2(1);
    stuck.h1_rel = FgAbelianGroup::trivial();
    CHECK_THROWS_AS(count_extensions(stuck), InvalidArgument);
}

TEST_CASE("instance validation messages") {
    // Connected genus-2 boundary forces rank >= 2 on the filling side.
    PbpInstance bad;
    bad.n = 3;
    bad.h1_l = FgAbelianGroup::free(1);
    bad.h1_sigma = FgAbelianGroup::free(4);
    bad.i1 = GroupHom::zero(bad.h1_l, bad.h1_sigma);
    bad.maslov_class = {0, 0, 0, 0};
    auto msgs = validate_instance(bad);
    REQUIRE(msgs.size() == 1);
    CHECK(msgs[0].severity == Severity::Warning);
    CHECK(msgs[0].message.find("inconsistent") != std::string::npos);

    // The Betti override takes precedence over the group's rank.
    bad.b1_sigma = 0;
    CHECK(validate_instance(bad).empty());

    // Sphere boundary of a ball: nothing to flag.
    PbpInstance ball;
    ball.n = 3;
    CHECK(validate_instance(ball).empty());

    PbpInstance d2 = disk2(0);
    auto note2 = validate_instance(d2);
    REQUIRE(note2.size() == 1);
    CHECK(note2[0].severity == Severity::Note);
    CHECK(note2[0].message.find("Maslov") != std::string::npos);
    d2.sigma_connected = false;
    CHECK(validate_instance(d2).empty());

    PbpInstance d4 = deg3(4, {0, 0}, true);
    auto note4 = validate_instance(d4);
    REQUIRE(note4.size() == 1);
    CHECK(note4[0].message.find("unitary") != std::string::npos);
}

TEST_CASE("desingularization advisor") {
    SingularityModel cone;
    cone.label = "sl-cone";
    cone.instance.n = 3;
    cone.local_maslov_zero = true;
    cone.is_sl = true;

    AdvisorReport rep = desingularization_advisor({cone}, 3);
    REQUIRE(rep.models.size() == 1);
    CHECK(rep.models[0].label == "sl-cone");
    CHECK(is_solvable(rep.models[0].verdict));
    CHECK(rep.aggregate ==
          AggregateVerdict::MaslovZeroDesingularizationExists);
    CHECK(rep.advisory.find("exact") != std::string::npos);

    // Solvable but without the local Maslov-zero certificate.
    SingularityModel weak = cone;
    weak.label = "weak";
    weak.local_maslov_zero = false;
    rep = desingularization_advisor({cone, weak}, 3);
    CHECK(rep.aggregate ==
          AggregateVerdict::SolvableButNoMaslovZeroGuarantee);

    // A connected link without the SL certificate still qualifies.
    SingularityModel connected = cone;
    connected.is_sl = false;
    connected.link_connected = true;
    CHECK(desingularization_advisor({connected}, 3).aggregate ==
          AggregateVerdict::MaslovZeroDesingularizationExists);

    // One obstructed link poisons the aggregate.
    SingularityModel stuck;
    stuck.label = "stuck";
    stuck.instance = lift3({0, 1});
    stuck.local_maslov_zero = true;
    stuck.link_connected = true;
    rep = desingularization_advisor({cone, stuck}, 3);
    CHECK(rep.aggregate == AggregateVerdict::Obstructed);
    CHECK_FALSE(is_solvable(rep.models[1].verdict));

    // Higher dimensions are declined, per model and in aggregate.
    rep = desingularization_advisor({cone}, 4);
    CHECK(rep.aggregate == AggregateVerdict::Undecided);
    REQUIRE(rep.models.size() == 1);
    CHECK(std::holds_alternative<Undecided>(rep.models[0].verdict));

    SingularityModel inexact = cone;
    inexact.local_exact = false;
    CHECK_THROWS_AS(desingularization_advisor({inexact}, 3), NotExact);

    SingularityModel mismatched = cone;
    mismatched.instance.n = 2;
    CHECK_THROWS_AS(desingularization_advisor({mismatched}, 3),
                    InvalidArgument);

    CHECK_THROWS_AS(desingularization_advisor({}, 1), UnsupportedDimension);

    // No singular points: nothing to repair, trivially achievable.
    CHECK(desingularization_advisor({}, 3).aggregate ==
          AggregateVerdict::MaslovZeroDesingularizationExists);
}

TEST_CASE("verdict strings") {
    CHECK(to_string(PbpVerdict(Solvable{true})) ==
          "solvable (a Maslov-zero solution exists)");
    CHECK(to_string(PbpVerdict(Solvable{false})) == "solvable");
    CHECK(to_string(PbpVerdict(Unsolvable{FailedCondition::Maslov})) ==
          "unsolvable (Maslov class obstruction)");
    CHECK(
        to_string(PbpVerdict(Unsolvable{FailedCondition::SuClass})).find(
            "unitary") != std::string::npos);
    CHECK(to_string(PbpVerdict(Undecided{"x"})) == "undecided: x");
    CHECK(to_string(AggregateVerdict::Obstructed) == "obstructed");
}
