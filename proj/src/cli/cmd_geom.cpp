#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include "common.hpp"
#include "slaglab/cones.hpp"
#include "slaglab/symplectic.hpp"

namespace slaglab::cli {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

// The reference non-exact loop: unit circle in the first coordinate plane
// of C^2, enclosing symplectic area pi.
LoopTrace circle_loop(int segments) {
    return LoopTrace::from_sampler(
        [](double theta) {
            LoopTrace::Sample s;
            s.point = Eigen::VectorXcd::Zero(2);
            s.point(0) = std::polar(1.0, theta);
            return s;
        },
        segments);
}

int run_integral(const RunConfig& cfg, bool circle,
                 const std::vector<int>& sw, int segments) {
    if (circle == !sw.empty())
        throw UsageError("pick exactly one loop: --circle or --sw p,q");

    std::string loop_name;
    LiouvilleResult res{};
    if (circle) {
        loop_name = "circle";
        res = loop_liouville_integral(circle_loop(segments));
    } else {
        ConeSpec cone = ConeSpec::schoen_wolfson(sw[0], sw[1]);
        loop_name = cone.id();
        res = loop_liouville_integral(
            link_loop(cone, 0, segments, /*with_frames=*/false));
    }

    Json j = make_report("geom integral");
    j["loop"] = loop_name;
    j["segments"] = segments;
    j["value"] = res.value;
    j["error_estimate"] = res.error_estimate;
    j["exact"] = res.exact;

    if (cfg.json) {
        emit_json(j);
    } else {
        std::ostringstream os;
        os << std::setprecision(12) << res.value;
        std::cout << "liouville integral over " << loop_name << ": "
                  << os.str() << "\n"
                  << "  error estimate " << std::scientific
                  << std::setprecision(3) << res.error_estimate << "\n"
                  << "  exact (vanishes within error): "
                  << (res.exact ? "yes" : "no") << "\n";
    }
    return kExitOk;
}

int run_maslov(const RunConfig& cfg, const std::vector<int>& sw,
               int segments) {
    if (sw.empty()) throw UsageError("--sw p,q is required");
    ConeSpec cone = ConeSpec::schoen_wolfson(sw[0], sw[1]);
    long long index = maslov_index(link_loop(cone, 0, segments));

    Json j = make_report("geom maslov");
    j["p"] = sw[0];
    j["q"] = sw[1];
    j["segments"] = segments;
    j["maslov_index"] = index;

    if (cfg.json)
        emit_json(j);
    else
        std::cout << "maslov index of the " << cone.id()
                  << " link loop: " << index << "\n";
    return kExitOk;
}

// Uniform grid on the torus link of the given dimension, with coordinate
// tangents and the product weight, ready for the moment quadrature.
std::vector<SurfaceSample> torus_grid(int n, int segments) {
    ConeSpec cone = ConeSpec::clifford_torus(n);
    int axes = n - 1;
    double h = kTau / segments;
    double weight = std::pow(h, axes);
    double scale = 1.0 / std::sqrt(static_cast<double>(n));

    std::vector<SurfaceSample> samples;
    std::vector<int> k(static_cast<std::size_t>(axes), 0);
    while (true) {
        Eigen::VectorXd angles(axes);
        for (int a = 0; a < axes; ++a)
            angles(a) = h * k[static_cast<std::size_t>(a)];
        Eigen::VectorXcd point = sample_link_point(cone, angles);
        double last = -angles.sum();
        RealFrame tangents(n);
        for (int a = 0; a < axes; ++a) {
            Eigen::VectorXcd t = Eigen::VectorXcd::Zero(n);
            t(a) = Complex(0, 1) * std::polar(scale, angles(a));
            t(n - 1) = Complex(0, -1) * std::polar(scale, last);
            tangents.append_complex(t);
        }
        samples.emplace_back(std::move(point), std::move(tangents), weight);

        int a = 0;
        for (; a < axes; ++a) {
            if (++k[static_cast<std::size_t>(a)] < segments) break;
            k[static_cast<std::size_t>(a)] = 0;
        }
        if (a == axes) break;
    }
    return samples;
}

int run_moments(const RunConfig& cfg, int n, int segments) {
    if (n < 2 || n > 4)
        throw UsageError("--clifford supports n = 2, 3, 4");
    if (segments == 0) segments = n == 2 ? 1024 : (n == 3 ? 48 : 16);
    if (segments < 4) throw UsageError("need at least 4 segments per axis");

    std::vector<SurfaceSample> samples = torus_grid(n, segments);
    std::vector<double> residuals =
        sl_moment_residuals(samples, moment_basis(n));
    double max_residual = 0.0;
    for (double r : residuals) max_residual = std::max(max_residual, std::abs(r));

    Json j = make_report("geom moments");
    j["n"] = n;
    j["segments"] = segments;
    j["basis_size"] = static_cast<int>(residuals.size());
    j["residuals"] = residuals;
    j["max_residual"] = max_residual;

    if (cfg.json) {
        emit_json(j);
    } else {
        std::cout << "torus link in dimension " << n << ", " << segments
                  << " segments per axis\n"
                  << "moment basis size: " << residuals.size() << "\n"
                  << std::scientific << std::setprecision(3);
        for (std::size_t i = 0; i < residuals.size(); ++i)
            std::cout << "  residual[" << std::setw(2) << i
                      << "] = " << residuals[i] << "\n";
        std::cout << "max residual: " << max_residual << "\n";
    }
    return kExitOk;
}

}  // namespace

void register_geom(CLI::App& app, RunConfig& cfg, int& exit_code) {
    CLI::App* geom = app.add_subcommand(
        "geom", "direct quadrature on loops and torus links");
    geom->require_subcommand(1);

    auto* integral = geom->add_subcommand(
        "integral", "loop integral of the Liouville primitive");
    auto circle = std::make_shared<bool>(false);
    auto sw = std::make_shared<std::vector<int>>();
    auto segments = std::make_shared<int>(8192);
    integral->add_flag("--circle", *circle,
                       "unit circle in the first coordinate of C^2");
    integral->add_option("--sw", *sw, "plane-curve link loop, e.g. 1,2")
        ->delimiter(',')
        ->expected(2);
    integral->add_option("--segments", *segments, "quadrature segments")
        ->capture_default_str();
    integral->callback([&cfg, &exit_code, circle, sw, segments] {
        exit_code = run_integral(cfg, *circle, *sw, *segments);
    });

    auto* maslov =
        geom->add_subcommand("maslov", "winding of a plane-curve link loop");
    auto msw = std::make_shared<std::vector<int>>();
    auto msegments = std::make_shared<int>(256);
    maslov->add_option("--sw", *msw, "winding exponents, e.g. 2,3")
        ->delimiter(',')
        ->expected(2);
    maslov->add_option("--segments", *msegments, "loop samples")
        ->capture_default_str();
    maslov->callback([&cfg, &exit_code, msw, msegments] {
        exit_code = run_maslov(cfg, *msw, *msegments);
    });

    auto* moments = geom->add_subcommand(
        "moments", "torus-link residuals of the full moment basis");
    auto n = std::make_shared<int>(3);
    auto osegments = std::make_shared<int>(0);
    moments->add_option("--clifford", *n, "complex dimension of the torus")
        ->capture_default_str();
    moments->add_option("--segments", *osegments,
                        "grid segments per axis (0 = per-dimension default)");
    moments->callback([&cfg, &exit_code, n, osegments] {
        exit_code = run_moments(cfg, *n, *osegments);
    });
}

}  // namespace slaglab::cli
