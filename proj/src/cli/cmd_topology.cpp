#include <algorithm>
#include <iostream>
#include <optional>
#include <string>

#include "common.hpp"
#include "slaglab/charclass.hpp"

namespace slaglab::cli {

namespace {

// Shared front end for both expression commands: on a parse failure, print
// the offending line with a caret under the reported byte offset.
std::optional<ManifoldExpr> parse_expression(const std::string& text) {
    try {
        return parse_manifold_expr(text);
    } catch (const ParseError& pe) {
        std::cerr << "error: " << pe.what() << "\n";
        std::cerr << "  " << text << "\n";
        std::cerr << "  "
                  << std::string(std::min(pe.position, text.size()), ' ')
                  << "^\n";
        return std::nullopt;
    }
}

std::string verdict_kind(CobordismVerdict::Kind k) {
    switch (k) {
        case CobordismVerdict::Kind::Bounds: return "Bounds";
        case CobordismVerdict::Kind::DoesNotBound: return "DoesNotBound";
        case CobordismVerdict::Kind::Undecided: return "Undecided";
    }
    return "Undecided";
}

// Characteristic-number sections shared between the two reports. Each
// section either materializes as a table or records why it cannot.
void fill_sw(Json& j, const ManifoldExpr& e) {
    try {
        Json table;
        for (const auto& [key, value] : sw_numbers(e)) table[key] = value;
        j["sw_numbers"] = table;
    } catch (const NoRingModel& err) {
        j["sw_unsupported_reason"] = err.what();
    }
}

void fill_pontrjagin(Json& j, const ManifoldExpr& e) {
    try {
        Json table;
        for (const auto& [key, value] : pontrjagin_numbers(e))
            table[key] = value;
        j["pontrjagin_numbers"] = table;
    } catch (const Unsupported& err) {
        j["pontrjagin_unsupported_reason"] = err.what();
    }
}

void print_table(const char* heading, const Json& j, const char* table_key,
                 const char* reason_key) {
    std::cout << heading;
    if (j.contains(table_key)) {
        const Json& table = j[table_key];
        if (table.empty()) {
            std::cout << " (none)\n";
            return;
        }
        std::cout << "\n";
        for (const auto& [key, value] : table.items())
            std::cout << "  " << key << " = " << value << "\n";
    } else {
        std::cout << " unsupported (" << j[reason_key].get<std::string>()
                  << ")\n";
    }
}

int run_cobordism(const RunConfig& cfg, const std::string& text) {
    std::optional<ManifoldExpr> expr = parse_expression(text);
    if (!expr) return kExitUsage;

    Json j = make_report("cobordism");
    j["expression"] = expr->to_string();
    j["dimension"] = expr->dimension();
    fill_sw(j, *expr);
    fill_pontrjagin(j, *expr);
    CobordismVerdict verdict = is_nullcobordant(*expr);
    Json v;
    v["kind"] = verdict_kind(verdict.kind);
    v["detail"] = verdict.detail;
    j["verdict"] = v;

    if (cfg.json) {
        emit_json(j);
    } else {
        std::cout << "expression: " << expr->to_string() << "\n"
                  << "dimension: " << expr->dimension() << "\n";
        print_table("stiefel-whitney numbers:", j, "sw_numbers",
                    "sw_unsupported_reason");
        print_table("pontrjagin numbers:", j, "pontrjagin_numbers",
                    "pontrjagin_unsupported_reason");
        std::cout << "verdict: " << verdict_kind(verdict.kind);
        if (!verdict.detail.empty())
            std::cout << " (" << verdict.detail << ")";
        std::cout << "\n";
    }
    return kExitOk;
}

int run_charclass(const RunConfig& cfg, const std::string& text) {
    std::optional<ManifoldExpr> expr = parse_expression(text);
    if (!expr) return kExitUsage;

    Json j = make_report("charclass");
    j["expression"] = expr->to_string();
    j["dimension"] = expr->dimension();
    fill_sw(j, *expr);
    fill_pontrjagin(j, *expr);

    try {
        ImmersionReport im = lagrangian_immersion_obstructions(*expr);
        Json sec;
        sec["sw_square_ok"] = im.sw_square_ok;
        sec["pontrjagin_trivial_ok"] = im.pontrjagin_trivial_ok;
        sec["obstructed"] = im.obstructed;
        if (!im.reason.empty()) sec["reason"] = im.reason;
        if (im.existence_note) sec["existence_note"] = *im.existence_note;
        j["immersion"] = sec;
    } catch (const Error& err) {
        j["immersion_unsupported_reason"] = err.what();
    }

    try {
        EulerReport eu = euler_embedding_obstruction(*expr);
        Json sec;
        sec["chi"] = eu.chi;
        sec["embedding_possible"] = eu.embedding_possible;
        if (eu.advisory) sec["advisory"] = *eu.advisory;
        j["euler"] = sec;
    } catch (const Error& err) {
        j["euler_unsupported_reason"] = err.what();
    }

    if (cfg.json) {
        emit_json(j);
    } else {
        std::cout << "expression: " << expr->to_string() << "\n"
                  << "dimension: " << expr->dimension() << "\n";
        print_table("stiefel-whitney numbers:", j, "sw_numbers",
                    "sw_unsupported_reason");
        print_table("pontrjagin numbers:", j, "pontrjagin_numbers",
                    "pontrjagin_unsupported_reason");
        if (j.contains("immersion")) {
            const Json& sec = j["immersion"];
            std::cout << "lagrangian immersion: "
                      << (sec["obstructed"].get<bool>() ? "obstructed"
                                                        : "unobstructed")
                      << " (w^2 = 1: "
                      << (sec["sw_square_ok"].get<bool>() ? "yes" : "no")
                      << ", p = 1: "
                      << (sec["pontrjagin_trivial_ok"].get<bool>() ? "yes"
                                                                   : "no")
                      << ")\n";
            if (sec.contains("reason"))
                std::cout << "  reason: "
                          << sec["reason"].get<std::string>() << "\n";
            if (sec.contains("existence_note"))
                std::cout << "  note: "
                          << sec["existence_note"].get<std::string>() << "\n";
        } else {
            std::cout << "lagrangian immersion: unsupported ("
                      << j["immersion_unsupported_reason"].get<std::string>()
                      << ")\n";
        }
        if (j.contains("euler")) {
            const Json& sec = j["euler"];
            std::cout << "euler characteristic: " << sec["chi"].get<long long>()
                      << " (lagrangian embedding "
                      << (sec["embedding_possible"].get<bool>()
                              ? "not excluded by chi"
                              : "impossible")
                      << ")\n";
            if (sec.contains("advisory"))
                std::cout << "  advisory: "
                          << sec["advisory"].get<std::string>() << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

void register_topology(CLI::App& app, RunConfig& cfg, int& exit_code) {
    auto* cob = app.add_subcommand(
        "cobordism", "oriented nullcobordism verdict for a manifold "
                     "expression");
    auto cob_expr = std::make_shared<std::string>();
    cob->add_option("expression", *cob_expr,
                    "e.g. \"Wu\" or \"CP(2) + -CP(2)\"")
        ->required();
    cob->callback([&cfg, &exit_code, cob_expr] {
        exit_code = run_cobordism(cfg, *cob_expr);
    });

    auto* cc = app.add_subcommand(
        "charclass", "characteristic numbers and immersion/embedding "
                     "obstructions");
    auto cc_expr = std::make_shared<std::string>();
    cc->add_option("expression", *cc_expr, "e.g. \"RP(3) * S(1)\"")
        ->required();
    cc->callback([&cfg, &exit_code, cc_expr] {
        exit_code = run_charclass(cfg, *cc_expr);
    });
}

}  // namespace slaglab::cli
