#pragma once

#include <array>

#include "quasibell/noise.h"
#include "quasibell/states.h"

namespace quasibell {

/// Best average fidelity achievable with classical resources alone.
inline constexpr double kClassicalFidelity = 2.0 / 3.0;

/// Closed-form catalog. Every function throws DegenerateStateError when the
/// spec's family normalization vanishes.
namespace formulas {

/// (1-r^2)/(1+r^2) for psi+, (1-r^2)/(1 +- r^2 cos 2theta) for phi+-, 1 for psi-.
double concurrence(const QuasiBellSpec &spec);

/// Minimum assured fidelity 2C/(1+C) under optimal corrections, written out per family.
double masfi(const QuasiBellSpec &spec);

/// Minimum of F^tel over input states under the standard Pauli corrections.
double mfi(const QuasiBellSpec &spec);

/// |<Bell_i|chi>|^2 for the four Bell states, in Family order, from closed forms.
std::array<double, 4> bell_overlaps(const QuasiBellSpec &spec);
/// Overlap with the Bell state of the spec's own family. The per-family
/// singlet-fraction closed forms give this value; it is the maximum only while
/// no other Bell overlap exceeds it (for psi+, while r^2 <= 1/2).
double frame_overlap(const QuasiBellSpec &spec);
/// Maximal singlet fraction: the largest of bell_overlaps.
double singlet_fraction(const QuasiBellSpec &spec);

/// max_i |<Bell_i|chi>|^2 by direct enumeration of the four overlaps.
double singlet_fraction_direct(const StateVector &two_qubit_state);

/// (2f + 1)/3.
double optimal_fidelity(const QuasiBellSpec &spec);

/// Noiseless closed forms of F_ave.
double noiseless_average_fidelity(const QuasiBellSpec &spec);

/// F_ave for every (family, kind, exposure); kind None delegates to the
/// noiseless forms. Noisy expressions are the closed forms in expanded algebraic form.
double analytic_average_fidelity(const QuasiBellSpec &spec, const NoiseScenario &scenario);

/// The commonly quoted AD all-three-qubits phi+ expression. It repeats the
/// Bob-only phi+ row and disagrees with simulation for eta > 0, so the
/// catalog uses the phi- row under theta -> theta + pi/2 instead.
double ad_all_three_phi_plus_uncorrected(double r, double theta, double eta);

}  // namespace formulas

struct FidelityReport {
    QuasiBellSpec spec;
    NoiseScenario scenario;
    /// The next five describe the noiseless quasi Bell channel.
    double concurrence;
    double masfi;
    double mfi;
    double singlet_fraction;
    double f_opt;
    /// Analytic average fidelity under `scenario`.
    double f_ave;
};

FidelityReport make_report(const QuasiBellSpec &spec, const NoiseScenario &scenario);

}  // namespace quasibell
