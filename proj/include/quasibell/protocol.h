#pragma once

#include <array>
#include <functional>
#include <optional>

#include "quasibell/linalg.h"
#include "quasibell/states.h"

namespace quasibell {

/// Bloch-sphere parametrization cos(polar/2)|0> + e^{i azimuth} sin(polar/2)|1>.
struct InputQubit {
    double polar = 0;
    double azimuth = 0;

    Vec2 amplitudes() const;
    StateVector state() const;
};

/// Result of one Bell-basis outcome on Alice's two qubits (message and her half
/// of the channel).
struct OutcomeRecord {
    int outcome_index;  // 1..4, in Family order (psi+, psi-, phi+, phi-)
    Family outcome;
    double probability;
    /// Bob's qubit after the Pauli correction; empty for zero-probability outcomes.
    std::optional<DensityOperator> corrected_state;
    /// <I|corrected|I>, 0 for zero-probability outcomes.
    double overlap;
};

inline constexpr double kZeroProbability = 1e-14;

/// Pauli correction Bob applies after outcome `outcome` when the protocol is
/// designed around the Bell channel `frame`. For the phi+ frame this is the
/// textbook lookup {phi+: I, phi-: Z, psi+: X, psi-: ZX}.
Mat2 correction_operator(Family outcome, Family frame);

/// Full measurement record for the joint state |I><I| (x) channel.
std::array<OutcomeRecord, 4> teleport_once(const DensityOperator &channel, const InputQubit &input, Family frame);

/// Same, for an arbitrary three-qubit joint state (e.g. after noise).
std::array<OutcomeRecord, 4> teleport_joint(const DensityOperator &joint, const InputQubit &input, Family frame);

/// sum_i P_i <I|rho_i|I>.
double fidelity_tel(const DensityOperator &channel, const InputQubit &input, Family frame);
double fidelity_tel_joint(const DensityOperator &joint, const InputQubit &input, Family frame);

/// Gauss-Legendre nodes in cos(polar) times uniform azimuth nodes.
struct QuadratureOrder {
    int polar_nodes = 16;
    int azimuth_nodes = 32;
};

/// (1/4pi) integral of f over the Bloch sphere. Supported polar node counts
/// are 8, 16, 32 and 64.
double bloch_average(const std::function<double(const InputQubit &)> &f, QuadratureOrder order = {});

double average_fidelity(const DensityOperator &channel, Family frame, QuadratureOrder order = {});

struct MinimumFidelity {
    double value;
    InputQubit argmin;
};

/// Global minimum of f over the sphere: a 181 x 360 grid scan followed by
/// coordinate-wise Brent refinement from the best grid point.
MinimumFidelity bloch_minimum(const std::function<double(const InputQubit &)> &f);

MinimumFidelity min_fidelity(const DensityOperator &channel, Family frame);

}  // namespace quasibell
