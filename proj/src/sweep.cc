#include "quasibell/sweep.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "quasibell/formulas.h"

namespace quasibell {

namespace {

double parse_double(std::string_view s) {
    std::string tmp(s);
    size_t used = 0;
    double v;
    try {
        v = std::stod(tmp, &used);
    } catch (const std::exception &) {
        throw std::invalid_argument(fmt::format("not a number: '{}'", s));
    }
    if (used != tmp.size()) {
        throw std::invalid_argument(fmt::format("not a number: '{}'", s));
    }
    return v;
}

void require_in(const GridRange &g, double lo, double hi, const char *name) {
    for (double v : {g.min, g.max}) {
        if (!(v >= lo && v <= hi)) {
            throw std::invalid_argument(fmt::format("{} grid value {} outside [{}, {}]", name, v, lo, hi));
        }
    }
}

}  // namespace

GridRange GridRange::parse(std::string_view text, double scale) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    while (true) {
        size_t pos = text.find(':', start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    if (parts.size() == 1) {
        return single(parse_double(parts[0]) * scale);
    }
    if (parts.size() != 3) {
        throw std::invalid_argument(fmt::format("grid '{}' is not min:max:steps", text));
    }
    GridRange g{parse_double(parts[0]) * scale, parse_double(parts[1]) * scale, 0};
    int steps = 0;
    auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), steps);
    if (ec != std::errc() || ptr != parts[2].data() + parts[2].size()) {
        throw std::invalid_argument(fmt::format("grid '{}' has a non-integer step count", text));
    }
    if (steps < 1) {
        throw std::invalid_argument(fmt::format("grid '{}' needs at least one step", text));
    }
    g.steps = steps;
    return g;
}

std::vector<double> GridRange::values() const {
    if (steps < 1) {
        throw std::invalid_argument("grid needs at least one step");
    }
    if (steps == 1) {
        return {min};
    }
    std::vector<double> out(static_cast<size_t>(steps));
    for (int k = 0; k < steps; k++) {
        out[static_cast<size_t>(k)] = k == steps - 1 ? max : min + (max - min) * k / (steps - 1);
    }
    return out;
}

void SweepConfig::validate() const {
    if (families.empty()) {
        throw std::invalid_argument("sweep needs at least one family");
    }
    for (const GridRange *g : {&r, &theta, &eta}) {
        if (g->steps < 1) {
            throw std::invalid_argument("grid needs at least one step");
        }
    }
    require_in(r, 0.0, 1.0, "r");
    require_in(eta, 0.0, 1.0, "eta");
    if (!std::isfinite(theta.min) || !std::isfinite(theta.max)) {
        throw std::invalid_argument("theta grid is not finite");
    }
}

SweepRow evaluate_point(Family family, double r, double theta, const NoiseScenario &scenario) {
    SweepRow row{};
    row.family = family;
    row.r = r;
    row.theta = theta;
    row.kind = scenario.kind;
    row.eta = scenario.damping;
    row.exposure = scenario.exposure;
    QuasiBellSpec spec{family, {r, theta}};
    try {
        FidelityReport rep = make_report(spec, scenario);
        double sim = noisy_average_fidelity(spec, scenario);
        row.f_ave_analytic = rep.f_ave;
        row.f_ave_sim = sim;
        row.gap = std::abs(rep.f_ave - sim);
        row.concurrence = rep.concurrence;
        row.masfi = rep.masfi;
        row.mfi = rep.mfi;
        row.singlet_fraction = rep.singlet_fraction;
        row.f_opt = rep.f_opt;
    } catch (const DegenerateStateError &) {
        // Leave every value empty; the row is flagged rather than dropped.
    }
    return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig &config) {
    config.validate();
    std::vector<Family> families = config.families;
    std::sort(families.begin(), families.end());
    families.erase(std::unique(families.begin(), families.end()), families.end());

    std::vector<double> rs = config.r.values();
    std::vector<double> thetas = config.theta.values();
    std::vector<double> etas = config.eta.values();

    struct Point {
        Family family;
        double r;
        double theta;
        double eta;
    };
    std::vector<Point> points;
    points.reserve(families.size() * rs.size() * thetas.size() * etas.size());
    for (Family f : families) {
        for (double r : rs) {
            for (double t : thetas) {
                for (double e : etas) {
                    points.push_back({f, r, t, e});
                }
            }
        }
    }

    std::vector<SweepRow> rows(points.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t k = next++; k < points.size(); k = next++) {
            const Point &p = points[k];
            NoiseScenario scenario{config.kind, p.eta, config.exposure};
            rows[k] = evaluate_point(p.family, p.r, p.theta, scenario);
        }
    };
    size_t n_threads = std::clamp<size_t>(std::thread::hardware_concurrency(), 1, 16);
    n_threads = std::min(n_threads, std::max<size_t>(points.size(), 1));
    std::vector<std::thread> pool;
    for (size_t k = 1; k < n_threads; k++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    return rows;
}

std::string format_exact(double v) {
    return fmt::format("{:.17g}", v);
}

void write_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    auto opt = [](const std::optional<double> &v) { return v ? format_exact(*v) : std::string(); };
    out << kCsvHeader << "\n";
    for (const SweepRow &row : rows) {
        out << family_name(row.family) << ',' << format_exact(row.r) << ',' << format_exact(row.theta) << ','
            << noise_kind_name(row.kind) << ',' << format_exact(row.eta) << ',' << exposure_name(row.exposure) << ','
            << opt(row.f_ave_analytic) << ',' << opt(row.f_ave_sim) << ',' << opt(row.gap) << ','
            << opt(row.concurrence) << ',' << opt(row.masfi) << ',' << opt(row.mfi) << ','
            << opt(row.singlet_fraction) << ',' << opt(row.f_opt) << ',' << (row.degenerate() ? 1 : 0) << "\n";
    }
}

void write_json(std::ostream &out, const std::vector<SweepRow> &rows) {
    auto opt = [](const std::optional<double> &v) { return v ? format_exact(*v) : std::string("null"); };
    out << "[";
    for (size_t k = 0; k < rows.size(); k++) {
        const SweepRow &row = rows[k];
        out << (k ? ",\n " : "\n ") << "{\"family\": \"" << family_name(row.family) << "\", \"r\": "
            << format_exact(row.r) << ", \"theta\": " << format_exact(row.theta) << ", \"noise\": \""
            << noise_kind_name(row.kind) << "\", \"eta\": " << format_exact(row.eta) << ", \"exposure\": \""
            << exposure_name(row.exposure) << "\", \"f_ave_analytic\": " << opt(row.f_ave_analytic)
            << ", \"f_ave_sim\": " << opt(row.f_ave_sim) << ", \"gap\": " << opt(row.gap)
            << ", \"concurrence\": " << opt(row.concurrence) << ", \"masfi\": " << opt(row.masfi)
            << ", \"mfi\": " << opt(row.mfi) << ", \"singlet_fraction\": " << opt(row.singlet_fraction)
            << ", \"f_opt\": " << opt(row.f_opt) << ", \"degenerate\": " << (row.degenerate() ? "true" : "false")
            << "}";
    }
    out << (rows.empty() ? "]\n" : "\n]\n");
}

}  // namespace quasibell
