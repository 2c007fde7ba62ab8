#include "slaglab/obstruction.hpp"

#include <utility>

namespace slaglab {

namespace {

void check_instance_shape(const PbpInstance& inst) {
    if (inst.n < 2)
        throw InvalidArgument("complex dimension must be at least 2");
    if (inst.i1.domain() != inst.h1_l)
        throw InvalidArgument("i1 domain does not match h1_l");
    if (inst.i1.codomain() != inst.h1_sigma)
        throw InvalidArgument("i1 codomain does not match h1_sigma");
    if (inst.maslov_class.size() !=
        static_cast<std::size_t>(inst.h1_sigma.generators()))
        throw ElementShapeMismatch(
            "maslov_class length does not match h1_sigma");
}

void check_degree3_shape(const PbpInstance& inst) {
    if (!inst.h3_l || !inst.h3_sigma || !inst.i3 || !inst.su_class)
        throw MissingField(
            "dimensions 4 and 5 need h3_l, h3_sigma, i3, and su_class");
    if (inst.i3->domain() != *inst.h3_l)
        throw InvalidArgument("i3 domain does not match h3_l");
    if (inst.i3->codomain() != *inst.h3_sigma)
        throw InvalidArgument("i3 codomain does not match h3_sigma");
    if (inst.su_class->size() !=
        static_cast<std::size_t>(inst.h3_sigma->generators()))
        throw ElementShapeMismatch("su_class length does not match h3_sigma");
}

}  // namespace

PbpVerdict decide_pbp(const PbpInstance& inst) {
    check_instance_shape(inst);
    if (!inst.exact_data)
        throw NotExact("the boundary data must be exact to decide");
    if (!inst.l_orientable)
        throw NotOrientable("only orientable fillings are supported");
    if (inst.n >= 6)
        return Undecided{
            "higher obstruction classes appear beyond complex dimension 5"};

    bool needs_degree3 = (inst.n == 4 || inst.n == 5);
    if (needs_degree3) check_degree3_shape(inst);

    // Degree-1 condition. With connected boundary at n = 2 the restriction
    // map is injective on the relevant piece, so membership in the image
    // sharpens to outright vanishing.
    bool maslov_ok = (inst.n == 2 && inst.sigma_connected)
                         ? inst.h1_sigma.is_zero(inst.maslov_class)
                         : in_image(inst.i1, inst.maslov_class);
    if (!maslov_ok) return Unsolvable{FailedCondition::Maslov};

    if (needs_degree3) {
        bool su_ok = (inst.n == 4 && inst.sigma_connected)
                         ? inst.h3_sigma->is_zero(*inst.su_class)
                         : in_image(*inst.i3, *inst.su_class);
        if (!su_ok) return Unsolvable{FailedCondition::SuClass};
    }

    return Solvable{inst.h1_sigma.is_zero(inst.maslov_class)};
}

std::string to_string(const PbpVerdict& v) {
    if (const auto* s = std::get_if<Solvable>(&v))
        return s->maslov_zero_possible
                   ? "solvable (a Maslov-zero solution exists)"
                   : "solvable";
    if (const auto* u = std::get_if<Unsolvable>(&v))
        return u->failed_condition == FailedCondition::Maslov
                   ? "unsolvable (Maslov class obstruction)"
                   : "unsolvable (special unitary class obstruction)";
    return "undecided: " + std::get<Undecided>(v).reason;
}

DiskVerdict decide_disk(int n) {
    if (n < 2)
        throw InvalidArgument("complex dimension must be at least 2");
    if (n % 2 == 1) return DiskVerdict::AlwaysSolvable;
    if (n == 2) return DiskVerdict::ConditionalOnMaslov;
    return DiskVerdict::ReducesToUnitaryObstruction;
}

std::string to_string(DiskVerdict v) {
    switch (v) {
        case DiskVerdict::AlwaysSolvable:
            return "always solvable";
        case DiskVerdict::ConditionalOnMaslov:
            return "solvable exactly when the Maslov class vanishes";
        case DiskVerdict::ReducesToUnitaryObstruction:
            return "reduces to a single integer unitary obstruction";
    }
    return "unknown";
}

FgAbelianGroup count_extensions(const PbpInstance& inst) {
    if (inst.n != 2 && inst.n != 3)
        throw UnsupportedDimension(
            "extension counting is implemented for dimensions 2 and 3");
    if (!inst.h1_rel)
        throw MissingField("count_extensions needs h1_rel");
    PbpVerdict verdict = decide_pbp(inst);
    if (!std::holds_alternative<Solvable>(verdict))
        throw InvalidArgument(
            "count_extensions applies to solvable instances only");
    // Circle-valued freedom is h1_rel; the determinant-one freedom adds one
    // free generator in dimension 3 and nothing in dimension 2.
    int extra = (inst.n == 3) ? 1 : 0;
    return FgAbelianGroup(inst.h1_rel->rank() + extra, inst.h1_rel->torsion());
}

std::vector<ValidationMessage> validate_instance(const PbpInstance& inst) {
    std::vector<ValidationMessage> out;
    int b1 = inst.b1_sigma.value_or(inst.h1_sigma.rank());
    if (inst.n == 3 && inst.sigma_connected && 2 * inst.h1_l.rank() < b1)
        out.push_back(
            {Severity::Warning,
             "inconsistent data: a filling in dimension 3 with connected "
             "boundary has first Betti number at least half the boundary's"});
    if (inst.sigma_connected && inst.l_orientable &&
        (inst.n == 2 || inst.n == 4))
        out.push_back(
            {Severity::Note,
             inst.n == 2
                 ? "connected boundary: the sharper rule applies, the Maslov "
                   "class must vanish rather than merely lift"
                 : "connected boundary: the sharper rule applies, the special "
                   "unitary class must vanish rather than merely lift"});
    return out;
}

std::string to_string(AggregateVerdict v) {
    switch (v) {
        case AggregateVerdict::MaslovZeroDesingularizationExists:
            return "a Maslov-zero desingularization exists";
        case AggregateVerdict::SolvableButNoMaslovZeroGuarantee:
            return "every model is solvable, but no Maslov-zero guarantee";
        case AggregateVerdict::Obstructed:
            return "obstructed";
        case AggregateVerdict::Undecided:
            return "undecided";
    }
    return "unknown";
}

AdvisorReport desingularization_advisor(
    const std::vector<SingularityModel>& models, int n) {
    if (n < 2)
        throw UnsupportedDimension("complex dimension must be at least 2");

    AdvisorReport report;
    report.advisory =
        "asymptotically conical ends with negative decay rate are "
        "automatically exact, so local exactness is free for such models";

    if (n >= 4) {
        for (const SingularityModel& m : models)
            report.models.push_back(
                {m.label,
                 Undecided{"dimension 4 and up needs the degree-3 class "
                           "data; run decide_pbp per link directly"}});
        report.aggregate = AggregateVerdict::Undecided;
        return report;
    }

    for (const SingularityModel& m : models) {
        if (!m.local_exact)
            throw NotExact("model '" + m.label + "' is not locally exact");
        if (m.instance.n != n)
            throw InvalidArgument("model '" + m.label +
                                  "' has a different dimension than the "
                                  "advisor call");
    }

    bool all_solvable = true;
    bool strong = true;
    for (const SingularityModel& m : models) {
        PbpVerdict verdict = decide_pbp(m.instance);
        if (!std::holds_alternative<Solvable>(verdict)) all_solvable = false;
        if (!((m.link_connected || m.is_sl) && m.local_maslov_zero))
            strong = false;
        report.models.push_back({m.label, std::move(verdict)});
    }

    if (!all_solvable)
        report.aggregate = AggregateVerdict::Obstructed;
    else if (strong)
        report.aggregate = AggregateVerdict::MaslovZeroDesingularizationExists;
    else
        report.aggregate = AggregateVerdict::SolvableButNoMaslovZeroGuarantee;
    return report;
}

}  // namespace slaglab
