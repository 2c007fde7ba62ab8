#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "common.hpp"
#include "slaglab/obstruction.hpp"

namespace slaglab::cli {

namespace {

// Instance files are validated by hand so every complaint carries the path
// of the offending field, e.g. "i3.matrix: row 1 has 2 entries, expected 3".

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw UsageError(path + ": " + msg);
}

std::string join(const std::string& path, const char* key) {
    return path.empty() ? key : path + "." + key;
}

const Json& require_field(const Json& j, const std::string& path,
                          const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(join(path, key), "required field is missing");
    return *it;
}

long long get_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long long>();
}

bool get_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected true or false");
    return j.get<bool>();
}

std::vector<long long> get_int_array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of integers");
    std::vector<long long> out;
    out.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(get_int(j[k], path + "[" + std::to_string(k) + "]"));
    return out;
}

FgAbelianGroup parse_group(const Json& j, const std::string& path) {
    if (!j.is_object())
        fail(path, "expected an object {\"rank\": r, \"torsion\": [...]}");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "rank" && key != "torsion")
            fail(join(path, key.c_str()), "unknown field");
    }
    long long rank = get_int(require_field(j, path, "rank"), join(path, "rank"));
    if (rank < 0) fail(join(path, "rank"), "rank must be non-negative");
    std::vector<long long> torsion;
    if (j.contains("torsion"))
        torsion = get_int_array(j["torsion"], join(path, "torsion"));
    try {
        return FgAbelianGroup(static_cast<int>(rank), std::move(torsion));
    } catch (const Error& e) {
        fail(join(path, "torsion"), e.what());
    }
}

GroupHom parse_hom(const Json& j, const std::string& path,
                   const FgAbelianGroup& domain,
                   const FgAbelianGroup& codomain) {
    if (!j.is_object()) fail(path, "expected an object {\"matrix\": [[...]]}");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "matrix") fail(join(path, key.c_str()), "unknown field");
    }
    const Json& m = require_field(j, path, "matrix");
    std::string mpath = join(path, "matrix");
    if (!m.is_array()) fail(mpath, "expected an array of rows");
    int rows = codomain.generators();
    int cols = domain.generators();
    if (static_cast<int>(m.size()) != rows)
        fail(mpath, "expected " + std::to_string(rows) +
                        " rows (codomain generators), got " +
                        std::to_string(m.size()));
    std::vector<long long> entries;
    entries.reserve(static_cast<std::size_t>(rows * cols));
    for (int r = 0; r < rows; ++r) {
        std::vector<long long> row = get_int_array(
            m[static_cast<std::size_t>(r)],
            mpath + "[" + std::to_string(r) + "]");
        if (static_cast<int>(row.size()) != cols)
            fail(mpath + "[" + std::to_string(r) + "]",
                 "expected " + std::to_string(cols) +
                     " entries (domain generators), got " +
                     std::to_string(row.size()));
        entries.insert(entries.end(), row.begin(), row.end());
    }
    try {
        return GroupHom(domain, codomain,
                        IntegerMatrix(rows, cols, std::move(entries)));
    } catch (const Error& e) {
        fail(mpath, e.what());
    }
}

std::vector<long long> parse_element(const Json& j, const std::string& path,
                                     const FgAbelianGroup& group) {
    std::vector<long long> v = get_int_array(j, path);
    if (static_cast<int>(v.size()) != group.generators())
        fail(path, "expected " + std::to_string(group.generators()) +
                       " coordinates for " + group.to_string() + ", got " +
                       std::to_string(v.size()));
    return v;
}

PbpInstance parse_instance(const Json& j) {
    if (!j.is_object()) fail("instance", "expected a JSON object");
    static const std::set<std::string> known = {
        "version",      "n",       "sigma_connected", "l_orientable",
        "exact_data",   "h1_L",    "h1_Sigma",        "i1",
        "maslov_class", "h3_L",    "h3_Sigma",        "i3",
        "su_class",     "h1_rel",  "b1_Sigma"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.contains(key)) fail(key, "unknown field");
    }

    if (get_int(require_field(j, "", "version"), "version") != 1)
        fail("version", "unsupported schema version (expected 1)");

    PbpInstance inst;
    long long n = get_int(require_field(j, "", "n"), "n");
    if (n < 2) fail("n", "complex dimension must be at least 2");
    inst.n = static_cast<int>(n);
    inst.sigma_connected =
        get_bool(require_field(j, "", "sigma_connected"), "sigma_connected");
    inst.l_orientable =
        get_bool(require_field(j, "", "l_orientable"), "l_orientable");
    inst.exact_data =
        get_bool(require_field(j, "", "exact_data"), "exact_data");

    inst.h1_l = parse_group(require_field(j, "", "h1_L"), "h1_L");
    inst.h1_sigma = parse_group(require_field(j, "", "h1_Sigma"), "h1_Sigma");
    inst.i1 = parse_hom(require_field(j, "", "i1"), "i1", inst.h1_l,
                        inst.h1_sigma);
    inst.maslov_class = parse_element(require_field(j, "", "maslov_class"),
                                      "maslov_class", inst.h1_sigma);

    bool needs_degree3 = inst.n == 4 || inst.n == 5;
    if (needs_degree3) {
        for (const char* key : {"h3_L", "h3_Sigma", "i3", "su_class"})
            if (!j.contains(key))
                fail(key, "required for n = " + std::to_string(inst.n));
    }
    if (j.contains("h3_L")) inst.h3_l = parse_group(j["h3_L"], "h3_L");
    if (j.contains("h3_Sigma"))
        inst.h3_sigma = parse_group(j["h3_Sigma"], "h3_Sigma");
    if (j.contains("i3")) {
        if (!inst.h3_l || !inst.h3_sigma)
            fail("i3", "i3 needs both h3_L and h3_Sigma");
        inst.i3 = parse_hom(j["i3"], "i3", *inst.h3_l, *inst.h3_sigma);
    }
    if (j.contains("su_class")) {
        if (!inst.h3_sigma) fail("su_class", "su_class needs h3_Sigma");
        inst.su_class =
            parse_element(j["su_class"], "su_class", *inst.h3_sigma);
    }

    if (j.contains("h1_rel")) inst.h1_rel = parse_group(j["h1_rel"], "h1_rel");
    if (j.contains("b1_Sigma")) {
        long long b1 = get_int(j["b1_Sigma"], "b1_Sigma");
        if (b1 < 0) fail("b1_Sigma", "Betti numbers are non-negative");
        inst.b1_sigma = static_cast<int>(b1);
    }
    return inst;
}

PbpInstance load_instance(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open '" + file + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError(file + ": " + e.what());
    }
    return parse_instance(doc);
}

int run_decide(const RunConfig& cfg, const std::string& file,
               bool count_ext) {
    PbpInstance inst = load_instance(file);
    PbpVerdict verdict = decide_pbp(inst);

    Json j = make_report("pbp decide");
    j["n"] = inst.n;
    j["verdict"] = to_string(verdict);
    int code = kExitOk;
    if (const auto* s = std::get_if<Solvable>(&verdict)) {
        j["verdict_kind"] = "solvable";
        j["maslov_zero_possible"] = s->maslov_zero_possible;
        if (count_ext)
            j["extensions"] = count_extensions(inst).to_string();
    } else if (const auto* u = std::get_if<Unsolvable>(&verdict)) {
        j["verdict_kind"] = "unsolvable";
        j["failed_condition"] =
            u->failed_condition == FailedCondition::Maslov
                ? "maslov"
                : "special-unitary";
        code = kExitUnsolvable;
    } else {
        j["verdict_kind"] = "undecided";
        j["reason"] = std::get<Undecided>(verdict).reason;
        code = kExitUndecided;
    }

    if (cfg.json) {
        emit_json(j);
    } else {
        std::cout << "n = " << inst.n << ": " << to_string(verdict) << "\n";
        if (j.contains("extensions"))
            std::cout << "extensions parameterized by: "
                      << j["extensions"].get<std::string>() << "\n";
    }
    return code;
}

int run_validate(const RunConfig& cfg, const std::string& file) {
    PbpInstance inst = load_instance(file);
    std::vector<ValidationMessage> messages = validate_instance(inst);

    Json j = make_report("pbp validate");
    j["n"] = inst.n;
    Json list = Json::array();
    for (const ValidationMessage& m : messages) {
        Json row;
        row["severity"] = m.severity == Severity::Warning ? "warning" : "note";
        row["message"] = m.message;
        list.push_back(row);
    }
    j["messages"] = list;

    if (cfg.json) {
        emit_json(j);
    } else {
        if (messages.empty()) std::cout << "no findings\n";
        for (const ValidationMessage& m : messages)
            std::cout << (m.severity == Severity::Warning ? "warning: "
                                                          : "note: ")
                      << m.message << "\n";
    }
    return kExitOk;
}

}  // namespace

void register_pbp(CLI::App& app, RunConfig& cfg, int& exit_code) {
    CLI::App* pbp = app.add_subcommand(
        "pbp", "prescribed boundary problem over a JSON instance file");
    pbp->require_subcommand(1);

    auto* decide = pbp->add_subcommand("decide", "run the decision engine");
    auto file = std::make_shared<std::string>();
    auto count_ext = std::make_shared<bool>(false);
    decide->add_option("file", *file, "instance JSON path")->required();
    decide->add_flag("--count-extensions", *count_ext,
                     "also report the extension-count group (n = 2, 3 with "
                     "h1_rel)");
    decide->callback([&cfg, &exit_code, file, count_ext] {
        exit_code = run_decide(cfg, *file, *count_ext);
    });

    auto* validate =
        pbp->add_subcommand("validate", "consistency screen on the data");
    auto vfile = std::make_shared<std::string>();
    validate->add_option("file", *vfile, "instance JSON path")->required();
    validate->callback([&cfg, &exit_code, vfile] {
        exit_code = run_validate(cfg, *vfile);
    });
}

}  // namespace slaglab::cli
