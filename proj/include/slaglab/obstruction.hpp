#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "slaglab/errors.hpp"
#include "slaglab/intalg.hpp"

namespace slaglab {

/// Topological input for one boundary-filling decision.
///
/// The engine consumes cohomology groups, restriction maps, and obstruction
/// classes as finished data; it never computes them from geometry. Classes
/// live in the groups named here: maslov_class is an element vector of
/// h1_sigma (free coordinates first, then torsion coordinates, matching
/// FgAbelianGroup), su_class an element of h3_sigma.
///
/// i1 is the restriction H^1(L) -> H^1(Sigma); i3 its degree-3 sibling.
/// The degree-3 data (h3_l, h3_sigma, i3, su_class) only participates for
/// n in {4, 5} and may be omitted otherwise. h1_rel = H^1(L, Sigma) is
/// needed only by count_extensions; b1_sigma can carry a Betti number for
/// validation when h1_sigma alone does not determine it.
struct PbpInstance {
    int n = 2;
    bool sigma_connected = true;
    bool l_orientable = true;
    bool exact_data = true;

    FgAbelianGroup h1_l = FgAbelianGroup::trivial();
    FgAbelianGroup h1_sigma = FgAbelianGroup::trivial();
    GroupHom i1 =
        GroupHom::zero(FgAbelianGroup::trivial(), FgAbelianGroup::trivial());
    std::vector<long long> maslov_class;

    std::optional<FgAbelianGroup> h3_l;
    std::optional<FgAbelianGroup> h3_sigma;
    std::optional<GroupHom> i3;
    std::optional<std::vector<long long>> su_class;

    std::optional<FgAbelianGroup> h1_rel;
    std::optional<int> b1_sigma;
};

/// Why a filling cannot exist.
enum class FailedCondition {
    Maslov,   // maslov_class not hit by i1 (or nonzero under the disk rule)
    SuClass,  // su_class not hit by i3 (or nonzero under the connected rule)
};

struct Solvable {
    bool maslov_zero_possible = false;
};
struct Unsolvable {
    FailedCondition failed_condition;
};
struct Undecided {
    std::string reason;
};

using PbpVerdict = std::variant<Solvable, Unsolvable, Undecided>;

std::string to_string(const PbpVerdict& v);

/// Decides whether the boundary data of inst extends to a filling.
///
/// Dimensions 2 and 3 test the Maslov class against the image of i1, with
/// the sharper connected-boundary rule at n = 2 (the class must vanish
/// outright). Dimensions 4 and 5 additionally test the degree-3 class
/// against the image of i3; at n = 4 with connected boundary that class
/// must vanish outright. Dimension 6 and up is out of reach of this engine
/// and returns Undecided.
///
/// Throws NotExact when exact_data is false, NotOrientable when
/// l_orientable is false, MissingField when degree-3 data is absent at
/// n in {4, 5}, InvalidArgument for n < 2 or element vectors of the wrong
/// shape for their group.
PbpVerdict decide_pbp(const PbpInstance& inst);

/// Disk-with-sphere-boundary shortcut, needing no instance data.
enum class DiskVerdict {
    AlwaysSolvable,                 // odd n
    ConditionalOnMaslov,            // n = 2: solvable iff the class vanishes
    ReducesToUnitaryObstruction,    // even n >= 4: one integer class decides
};

DiskVerdict decide_disk(int n);

std::string to_string(DiskVerdict v);

/// The solutions of a solvable instance, up to homotopy, form a coset space
/// of this group: the circle-valued choices contribute H^1(L, Sigma), the
/// determinant-one part contributes nothing at n = 2 and a single Z at
/// n = 3.
///
/// Requires decide_pbp(inst) solvable, h1_rel present, and n in {2, 3};
/// throws InvalidArgument, MissingField, or UnsupportedDimension
/// accordingly.
FgAbelianGroup count_extensions(const PbpInstance& inst);

enum class Severity { Note, Warning };

struct ValidationMessage {
    Severity severity;
    std::string message;
};

/// Consistency screen over the instance data. Warnings flag data that
/// cannot come from an actual manifold pair (at n = 3 with connected
/// boundary, the filling's first Betti number is at least half the
/// boundary's). Notes point out when the connected-boundary hypotheses
/// activate the sharper n = 2 / n = 4 rules above.
std::vector<ValidationMessage> validate_instance(const PbpInstance& inst);

/// One isolated singular point of a candidate Lagrangian, described by the
/// filling problem of its link.
struct SingularityModel {
    std::string label;
    PbpInstance instance;
    bool local_exact = true;
    bool local_maslov_zero = false;
    bool link_connected = false;
    bool is_sl = false;
};

enum class AggregateVerdict {
    MaslovZeroDesingularizationExists,
    SolvableButNoMaslovZeroGuarantee,
    Obstructed,
    Undecided,
};

struct ModelReport {
    std::string label;
    PbpVerdict verdict;
};

struct AdvisorReport {
    std::vector<ModelReport> models;
    AggregateVerdict aggregate;
    std::string advisory;
};

std::string to_string(AggregateVerdict v);

/// Runs decide_pbp on each singular point's link data and aggregates.
/// The strong conclusion (a Maslov-zero desingularization exists) needs
/// every model solvable, locally Maslov-zero, and either connected-link or
/// modeled on a special Lagrangian cone. The advisory string reminds the
/// caller that conical ends with negative decay rate are automatically
/// exact, so local_exact is usually free.
///
/// Throws UnsupportedDimension for n < 2 and NotExact when any model has
/// local_exact false. For n >= 4 the aggregate is Undecided: the advisor
/// predates the degree-3 machinery and will not guess.
AdvisorReport desingularization_advisor(const std::vector<SingularityModel>& models,
                                        int n);

}  // namespace slaglab
