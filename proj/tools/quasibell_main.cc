// quasibell: reports, parameter sweeps and self-verification for teleportation
// over quasi Bell channels.
//
//   quasibell report --family psi+ --r 0.5
//   quasibell report --family phi- --r 0.5 --theta 1/3 --noise ad --eta 0.4 --exposure all
//   quasibell sweep --family all --grid r=0:1:21 --theta 0 --out fig1a.csv
//   quasibell sweep --noise pd --exposure all --r 0.5 --theta 1/3 --grid eta=0:1:101 --format json
//   quasibell verify
//
// Angles are in units of pi unless --radians is given.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "quasibell/formulas.h"
#include "quasibell/noise.h"
#include "quasibell/protocol.h"
#include "quasibell/states.h"
#include "quasibell/sweep.h"
#include "quasibell/verify.h"

namespace {

using namespace quasibell;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitIo = 3;
constexpr int kExitUsage = static_cast<int>(CLI::ExitCodes::ValidationError);

/// Accepts "a/b" or a decimal.
double parse_ratio(const std::string &text) {
    size_t slash = text.find('/');
    if (slash == std::string::npos) {
        return GridRange::parse(text).min;
    }
    double num = GridRange::parse(text.substr(0, slash)).min;
    double den = GridRange::parse(text.substr(slash + 1)).min;
    if (den == 0) {
        throw std::invalid_argument("angle ratio has a zero denominator");
    }
    return num / den;
}

/// min:max:steps where min and max may be ratios.
GridRange parse_grid(const std::string &text, double scale) {
    size_t a = text.find(':');
    if (a == std::string::npos) {
        return GridRange::single(parse_ratio(text) * scale);
    }
    size_t b = text.find(':', a + 1);
    if (b == std::string::npos) {
        throw std::invalid_argument(fmt::format("grid '{}' is not min:max:steps", text));
    }
    GridRange g = GridRange::parse("0:0:" + text.substr(b + 1));
    g.min = parse_ratio(text.substr(0, a)) * scale;
    g.max = parse_ratio(text.substr(a + 1, b - a - 1)) * scale;
    return g;
}

std::vector<Family> parse_families(const std::string &name) {
    if (name == "all") {
        return {kAllFamilies.begin(), kAllFamilies.end()};
    }
    return {parse_family(name)};
}

struct CommonArgs {
    std::string family = "psi+";
    std::string r = "0";
    std::string theta = "0";
    std::string eta = "0";
    std::string noise = "none";
    std::string exposure = "bob";
    bool radians = false;

    double angle_scale() const {
        return radians ? 1.0 : std::numbers::pi;
    }
};

void add_common(CLI::App *cmd, CommonArgs &args, const std::string &default_family) {
    args.family = default_family;
    cmd->add_option("--family", args.family, "psi+, psi-, phi+, phi- or all")->capture_default_str();
    cmd->add_option("--r", args.r, "overlap modulus r in [0, 1]")->capture_default_str();
    cmd->add_option("--theta", args.theta, "overlap phase, in units of pi (e.g. 1/3)")->capture_default_str();
    cmd->add_flag("--radians", args.radians, "read --theta and theta grids in radians");
    cmd->add_option("--noise", args.noise, "none, ad or pd")->capture_default_str();
    cmd->add_option("--eta", args.eta, "decoherence rate in [0, 1]")->capture_default_str();
    cmd->add_option("--exposure", args.exposure, "bob, alice-bob or all")->capture_default_str();
}

void print_report(std::ostream &out, const FidelityReport &rep, double f_ave_sim, const MinimumFidelity &min_sim) {
    auto line = [&](std::string_view key, double v) { out << fmt::format("  {:<18}{:.6g}\n", key, v); };
    out << fmt::format("{} r={:.6g} theta={:.6g} ({:.6g} pi)\n", family_name(rep.spec.family), rep.spec.overlap.r,
                       rep.spec.overlap.theta, rep.spec.overlap.theta / std::numbers::pi);
    if (rep.scenario.kind == NoiseKind::None) {
        out << "  noise             none\n";
    } else {
        out << fmt::format("  noise             {} eta={:.6g} exposure={}\n", noise_kind_name(rep.scenario.kind),
                           rep.scenario.damping, exposure_name(rep.scenario.exposure));
    }
    line("concurrence", rep.concurrence);
    line("masfi", rep.masfi);
    line("mfi", rep.mfi);
    line("singlet_fraction", rep.singlet_fraction);
    line("f_opt", rep.f_opt);
    line("f_ave", rep.f_ave);
    line("f_ave_sim", f_ave_sim);
    out << fmt::format("  {:<18}{:.3g}\n", "gap", std::abs(rep.f_ave - f_ave_sim));
    out << fmt::format("  {:<18}{:.6g} at theta'={:.6g} phi'={:.6g}\n", "mfi_sim", min_sim.value,
                       min_sim.argmin.polar, min_sim.argmin.azimuth);
}

int cmd_report(const CommonArgs &args) {
    NoiseScenario scenario{parse_noise_kind(args.noise), GridRange::parse(args.eta).min, parse_exposure(args.exposure)};
    scenario.validate();
    double r = GridRange::parse(args.r).min;
    double theta = parse_ratio(args.theta) * args.angle_scale();
    int status = kExitOk;
    for (Family f : parse_families(args.family)) {
        QuasiBellSpec spec{f, {r, theta}};
        try {
            FidelityReport rep = make_report(spec, scenario);
            double sim = noisy_average_fidelity(spec, scenario);
            MinimumFidelity min_sim =
                bloch_minimum([&](const InputQubit &in) { return noisy_fidelity_tel(spec, scenario, in); });
            print_report(std::cout, rep, sim, min_sim);
        } catch (const DegenerateStateError &e) {
            std::cerr << "DegenerateState: " << e.what() << "\n";
            status = kExitDegenerate;
        }
    }
    return status;
}

int cmd_sweep(const CommonArgs &args, const std::vector<std::string> &grids, const std::string &format,
              const std::string &out_path) {
    SweepConfig cfg;
    cfg.families = parse_families(args.family);
    cfg.r = GridRange::single(GridRange::parse(args.r).min);
    cfg.theta = GridRange::single(parse_ratio(args.theta) * args.angle_scale());
    cfg.eta = GridRange::single(GridRange::parse(args.eta).min);
    cfg.kind = parse_noise_kind(args.noise);
    cfg.exposure = parse_exposure(args.exposure);
    cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    cfg.output_path = out_path;
    for (const std::string &g : grids) {
        size_t eq = g.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(fmt::format("--grid '{}' must look like name=min:max:steps", g));
        }
        std::string name = g.substr(0, eq);
        std::string spec = g.substr(eq + 1);
        if (name == "r") {
            cfg.r = parse_grid(spec, 1.0);
        } else if (name == "theta") {
            cfg.theta = parse_grid(spec, args.angle_scale());
        } else if (name == "eta") {
            cfg.eta = parse_grid(spec, 1.0);
        } else {
            throw std::invalid_argument(fmt::format("unknown grid parameter '{}' (expected r, theta or eta)", name));
        }
    }
    cfg.validate();

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::out | std::ios::trunc);
        if (!file) {
            std::cerr << "error: cannot open '" << out_path << "' for writing\n";
            return kExitIo;
        }
    }
    std::ostream &out = out_path.empty() ? std::cout : file;

    std::vector<SweepRow> rows = run_sweep(cfg);
    if (cfg.format == OutputFormat::Json) {
        write_json(out, rows);
    } else {
        write_csv(out, rows);
    }
    out.flush();
    if (!out) {
        std::cerr << "error: failed writing sweep output\n";
        return kExitIo;
    }
    return kExitOk;
}

int cmd_verify() {
    bool all_ok = true;
    std::cout << fmt::format("{:<6}{:<72}{:>12}{:>10}\n", "", "suite", "worst", "tol");
    run_verification([&](const CheckResult &r) {
        all_ok = all_ok && r.passed;
        std::cout << fmt::format("{:<6}{:<72}{:>12.3g}{:>10.0e}\n", r.passed ? "PASS" : "FAIL", r.name, r.worst,
                                 r.tolerance);
        if (!r.passed) {
            std::cout << "      failing case: " << r.detail << "\n";
        }
        std::cout.flush();
    });
    std::cout << (all_ok ? "all suites passed\n" : "verification FAILED\n");
    return all_ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Teleportation over quasi Bell channels: closed forms, simulation and sweeps"};
    app.require_subcommand(1);

    CommonArgs report_args;
    CLI::App *report = app.add_subcommand("report", "Print every fidelity measure for one channel");
    add_common(report, report_args, "psi+");

    CommonArgs sweep_args;
    std::vector<std::string> grids;
    std::string format = "csv";
    std::string out_path;
    CLI::App *sweep = app.add_subcommand("sweep", "Evaluate a parameter grid and write CSV or JSON");
    add_common(sweep, sweep_args, "all");
    sweep->add_option("--grid", grids, "name=min:max:steps for r, theta or eta (repeatable)");
    sweep->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sweep->add_option("--out", out_path, "output file (default: stdout)");

    app.add_subcommand("verify", "Run every invariant suite and print a pass/fail table");

    CLI11_PARSE(app, argc, argv);

    try {
        if (report->parsed()) {
            return cmd_report(report_args);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_args, grids, format, out_path);
        }
        return cmd_verify();
    } catch (const DegenerateStateError &e) {
        std::cerr << "DegenerateState: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
