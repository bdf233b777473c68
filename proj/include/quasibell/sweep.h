#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "quasibell/noise.h"
#include "quasibell/states.h"

namespace quasibell {

/// Inclusive grid of `steps` points; a single step is just `min`.
struct GridRange {
    double min = 0;
    double max = 0;
    int steps = 1;

    static GridRange single(double v) {
        return {v, v, 1};
    }
    /// Parses "min:max:steps"; also accepts a bare value as a one-point grid.
    /// `scale` multiplies min and max (pi for angles given in units of pi).
    static GridRange parse(std::string_view text, double scale = 1.0);
    std::vector<double> values() const;
};

enum class OutputFormat { Csv, Json };

struct SweepConfig {
    std::vector<Family> families{kAllFamilies.begin(), kAllFamilies.end()};
    GridRange r;
    GridRange theta;
    GridRange eta;
    NoiseKind kind = NoiseKind::None;
    Exposure exposure = Exposure::BobOnly;
    OutputFormat format = OutputFormat::Csv;
    std::string output_path;

    /// Throws std::invalid_argument on empty families, non-positive steps or
    /// values outside the parameter domains.
    void validate() const;
};

struct SweepRow {
    Family family;
    double r;
    double theta;
    NoiseKind kind;
    double eta;
    Exposure exposure;
    /// Every value below is empty when the grid point is degenerate.
    std::optional<double> f_ave_analytic;
    std::optional<double> f_ave_sim;
    std::optional<double> gap;
    std::optional<double> concurrence;
    std::optional<double> masfi;
    std::optional<double> mfi;
    std::optional<double> singlet_fraction;
    std::optional<double> f_opt;

    bool degenerate() const {
        return !f_ave_analytic.has_value();
    }
};

inline constexpr std::string_view kCsvHeader =
    "family,r,theta,noise,eta,exposure,f_ave_analytic,f_ave_sim,gap,concurrence,masfi,mfi,singlet_fraction,f_opt,"
    "degenerate";

SweepRow evaluate_point(Family family, double r, double theta, const NoiseScenario &scenario);

/// Rows ordered by family (declaration order), then r, theta, eta. Grid points
/// are evaluated in parallel; the output order does not depend on scheduling.
std::vector<SweepRow> run_sweep(const SweepConfig &config);

/// Numbers are written with 17 significant digits.
void write_csv(std::ostream &out, const std::vector<SweepRow> &rows);
void write_json(std::ostream &out, const std::vector<SweepRow> &rows);

/// `%.17g`, the format used for every machine-readable number.
std::string format_exact(double v);

}  // namespace quasibell
