#include <charconv>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"
#include "slaglab/cones.hpp"
#include "slaglab/symplectic.hpp"

namespace slaglab::cli {

namespace {

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string piece = s.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        int value = 0;
        auto [ptr, ec] = std::from_chars(piece.data(),
                                         piece.data() + piece.size(), value);
        if (ec != std::errc() || ptr != piece.data() + piece.size())
            return {};
        out.push_back(value);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

ConeSpec parse_cone_id(const std::string& id) {
    const std::string usage =
        "cone id must look like su(3), su-so(3), su-sp(2), sw(1,2), or "
        "clifford(3)";
    std::size_t open = id.find('(');
    if (open == std::string::npos || id.empty() || id.back() != ')')
        throw UsageError(usage);
    std::string name = id.substr(0, open);
    std::vector<int> args =
        parse_int_list(id.substr(open + 1, id.size() - open - 2));
    if (args.empty()) throw UsageError(usage);

    // Catalog parameter errors (coprimality, minimum size) surface as
    // InvalidParameter from the factories and exit with the usage code.
    if (name == "su" && args.size() == 1) return ConeSpec::su(args[0]);
    if (name == "su-so" && args.size() == 1) return ConeSpec::su_so(args[0]);
    if (name == "su-sp" && args.size() == 1) return ConeSpec::su_sp(args[0]);
    if (name == "sw" && args.size() == 2)
        return ConeSpec::schoen_wolfson(args[0], args[1]);
    if (name == "clifford" && args.size() == 1)
        return ConeSpec::clifford_torus(args[0]);
    throw UsageError("unknown cone id '" + id + "'; " + usage);
}

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

int run_verify(const RunConfig& cfg, const std::string& id, int samples) {
    long long seed = require_seed(cfg);
    double tol = cfg.tol.value_or(1e-8);
    ConeSpec cone = parse_cone_id(id);
    ConeReport rep = verify_cone(cone, samples, tol, seed);

    bool catalog = cone.is_special_lagrangian();
    bool matches =
        (rep.verdict == ConeVerdict::SpecialLagrangian) == catalog;

    Json j = make_report("cone verify");
    j["cone"] = cone.id();
    j["samples"] = samples;
    j["seed"] = seed;
    j["tolerance"] = tol;
    j["sphere_residual"] = rep.sphere_residual;
    j["legendrian_residual"] = rep.legendrian_residual;
    j["isotropy_residual"] = rep.isotropy_residual;
    Json mean;
    mean["re"] = rep.phase_mean.real();
    mean["im"] = rep.phase_mean.imag();
    j["phase_mean"] = mean;
    j["phase_stddev"] = rep.phase_stddev;
    j["verdict"] = to_string(rep.verdict);
    j["catalog_special_lagrangian"] = catalog;
    j["matches_catalog"] = matches;
    if (cone.smoothability_note()) j["note"] = *cone.smoothability_note();
    if (cone.advisory()) j["advisory"] = *cone.advisory();

    if (cfg.json) {
        emit_json(j);
    } else {
        std::cout << "cone " << cone.id() << ": " << samples
                  << " samples, seed " << seed << ", tolerance " << sci(tol)
                  << "\n"
                  << "  sphere residual      " << sci(rep.sphere_residual)
                  << "\n"
                  << "  legendrian residual  " << sci(rep.legendrian_residual)
                  << "\n"
                  << "  isotropy residual    " << sci(rep.isotropy_residual)
                  << "\n"
                  << "  phase stddev         " << sci(rep.phase_stddev)
                  << "\n"
                  << "verdict: " << to_string(rep.verdict)
                  << (matches ? " (matches catalog)"
                              : " (DOES NOT match catalog)")
                  << "\n";
        if (cone.smoothability_note())
            std::cout << "note: " << *cone.smoothability_note() << "\n";
        if (cone.advisory())
            std::cout << "advisory: " << *cone.advisory() << "\n";
    }
    return matches ? kExitOk : kExitMismatch;
}

int run_maslov(const RunConfig& cfg, int p, int q, int segments) {
    ConeSpec cone = ConeSpec::schoen_wolfson(p, q);
    long long index = maslov_index(link_loop(cone, 0, segments));

    Json j = make_report("cone maslov");
    j["p"] = p;
    j["q"] = q;
    j["segments"] = segments;
    j["maslov_index"] = index;

    if (cfg.json)
        emit_json(j);
    else
        std::cout << "maslov index of the " << cone.id()
                  << " link loop: " << index << "\n";
    return kExitOk;
}

int run_smoothing(const RunConfig& cfg, const std::string& id, double t,
                  double r_min, double r_max, int points) {
    long long seed = require_seed(cfg);
    ConeSpec cone = parse_cone_id(id);
    if (points < 5) throw UsageError("need at least 5 radii for the fit");
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw UsageError("radius range must satisfy 0 < r-min < r-max");

    SmoothingFamily family(cone, t);
    std::vector<double> radii(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k)
        radii[static_cast<std::size_t>(k)] =
            r_min * std::pow(r_max / r_min,
                             static_cast<double>(k) / (points - 1));
    double slope =
        decay_rate_fit(family, radii, static_cast<std::uint64_t>(seed));

    Json j = make_report("cone smoothing");
    j["cone"] = cone.id();
    j["t"] = t;
    j["seed"] = seed;
    j["family_rate"] = family.rate();
    j["fitted_distance_slope"] = slope;
    j["radii"] = radii;
    Json angles = Json::array();
    for (double r : radii) {
        Json row;
        row["r"] = r;
        row["branch0"] = smoothing_angle(family, r, 0);
        row["branch1"] = smoothing_angle(family, r, 1);
        angles.push_back(row);
    }
    j["angles"] = angles;

    if (cfg.json) {
        emit_json(j);
    } else {
        std::cout << "smoothing family over " << cone.id() << " at t = " << t
                  << "\n"
                  << "  family decay rate    " << family.rate() << "\n"
                  << "  fitted distance slope " << std::setprecision(4)
                  << slope << "  (expected " << (1.0 - family.n()) << ")\n"
                  << "  branch angles:\n";
        for (const Json& row : angles)
            std::cout << "    r = " << std::setw(8)
                      << row["r"].get<double>() << "  " << std::scientific
                      << std::setprecision(6)
                      << row["branch0"].get<double>() << "  "
                      << row["branch1"].get<double>()
                      << std::defaultfloat << "\n";
    }
    return kExitOk;
}

}  // namespace

void register_cone(CLI::App& app, RunConfig& cfg, int& exit_code) {
    CLI::App* cone = app.add_subcommand("cone", "catalog cone operations");
    cone->require_subcommand(1);

    auto* verify =
        cone->add_subcommand("verify", "sample a cone link and check the "
                                       "special Lagrangian conditions");
    auto id = std::make_shared<std::string>();
    auto samples = std::make_shared<int>(200);
    verify->add_option("id", *id, "cone id, e.g. su-so(3)")->required();
    verify->add_option("--samples", *samples, "number of random link samples")
        ->capture_default_str();
    verify->callback([&cfg, &exit_code, id, samples] {
        exit_code = run_verify(cfg, *id, *samples);
    });

    auto* maslov = cone->add_subcommand(
        "maslov", "winding of the plane-curve link loop");
    auto p = std::make_shared<int>();
    auto q = std::make_shared<int>();
    auto segments = std::make_shared<int>(256);
    maslov->add_option("p", *p, "first winding exponent")->required();
    maslov->add_option("q", *q, "second winding exponent")->required();
    maslov->add_option("--segments", *segments, "loop samples")
        ->capture_default_str();
    maslov->callback([&cfg, &exit_code, p, q, segments] {
        exit_code = run_maslov(cfg, *p, *q, *segments);
    });

    auto* smoothing = cone->add_subcommand(
        "smoothing", "branch angles and decay of the level-set smoothing");
    auto sid = std::make_shared<std::string>();
    auto t = std::make_shared<double>(1.0);
    auto r_min = std::make_shared<double>(10.0);
    auto r_max = std::make_shared<double>(1000.0);
    auto points = std::make_shared<int>(5);
    smoothing->add_option("id", *sid, "cone id")->required();
    smoothing->add_option("--t", *t, "level value")->capture_default_str();
    smoothing->add_option("--r-min", *r_min, "smallest radius")
        ->capture_default_str();
    smoothing->add_option("--r-max", *r_max, "largest radius")
        ->capture_default_str();
    smoothing->add_option("--points", *points, "number of radii")
        ->capture_default_str();
    smoothing->callback([&cfg, &exit_code, sid, t, r_min, r_max, points] {
        exit_code = run_smoothing(cfg, *sid, *t, *r_min, *r_max, *points);
    });
}

}  // namespace slaglab::cli
