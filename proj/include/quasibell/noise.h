#pragma once

#include <string_view>
#include <vector>

#include "quasibell/linalg.h"
#include "quasibell/protocol.h"
#include "quasibell/states.h"

namespace quasibell {

enum class NoiseKind { None, AmplitudeDamping, PhaseDamping };

/// Which of the three qubits (message 0, Alice 1, Bob 2) see the channel.
enum class Exposure { BobOnly, AliceAndBob, AllThree };

inline constexpr std::array<NoiseKind, 2> kNoisyKinds = {NoiseKind::AmplitudeDamping, NoiseKind::PhaseDamping};
inline constexpr std::array<Exposure, 3> kAllExposures = {Exposure::BobOnly, Exposure::AliceAndBob,
                                                          Exposure::AllThree};

std::string_view noise_kind_name(NoiseKind k);  // "none", "ad", "pd"
NoiseKind parse_noise_kind(std::string_view name);
std::string_view exposure_name(Exposure e);  // "bob", "alice-bob", "all"
Exposure parse_exposure(std::string_view name);

struct NoiseScenario {
    NoiseKind kind = NoiseKind::None;
    /// Decoherence rate in [0, 1], shared by every exposed qubit.
    double damping = 0;
    Exposure exposure = Exposure::BobOnly;

    static NoiseScenario noiseless() {
        return {};
    }
    /// Throws std::invalid_argument if damping is outside [0, 1].
    void validate() const;
    std::vector<size_t> exposed_qubits() const;
};

struct KrausPair {
    Mat2 k0;
    Mat2 k1;
};

/// AD: K0 = |0><0| + sqrt(1-eta)|1><1|, K1 = sqrt(eta)|0><1|.
/// PD: same K0, K1 = sqrt(eta)|1><1|.
KrausPair kraus_for(NoiseKind kind, double damping);

/// sum_k (K_k on `qubit`) rho (K_k on `qubit`)^dagger.
Mat apply_single_qubit_channel(const Mat &rho, size_t qubit, const KrausPair &kraus);

/// Applies the scenario's channel independently to each exposed qubit of a
/// three-qubit state. kind None returns rho unchanged.
DensityOperator apply_noise(const DensityOperator &rho, const NoiseScenario &scenario);

/// F^tel for the input (x) quasi Bell joint state after noise.
double noisy_fidelity_tel(const QuasiBellSpec &spec, const NoiseScenario &scenario, const InputQubit &input);

/// Bloch average of noisy_fidelity_tel with the quasi Bell family as the
/// correction frame.
double noisy_average_fidelity(const QuasiBellSpec &spec, const NoiseScenario &scenario, QuadratureOrder order = {});

}  // namespace quasibell
