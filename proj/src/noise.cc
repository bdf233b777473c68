#include "quasibell/noise.h"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace quasibell {

std::string_view noise_kind_name(NoiseKind k) {
    switch (k) {
        case NoiseKind::None:
            return "none";
        case NoiseKind::AmplitudeDamping:
            return "ad";
        case NoiseKind::PhaseDamping:
            return "pd";
    }
    throw std::invalid_argument("unknown noise kind");
}

NoiseKind parse_noise_kind(std::string_view name) {
    for (NoiseKind k : {NoiseKind::None, NoiseKind::AmplitudeDamping, NoiseKind::PhaseDamping}) {
        if (noise_kind_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument(fmt::format("unknown noise kind '{}' (expected none, ad or pd)", name));
}

std::string_view exposure_name(Exposure e) {
    switch (e) {
        case Exposure::BobOnly:
            return "bob";
        case Exposure::AliceAndBob:
            return "alice-bob";
        case Exposure::AllThree:
            return "all";
    }
    throw std::invalid_argument("unknown exposure");
}

Exposure parse_exposure(std::string_view name) {
    for (Exposure e : kAllExposures) {
        if (exposure_name(e) == name) {
            return e;
        }
    }
    throw std::invalid_argument(fmt::format("unknown exposure '{}' (expected bob, alice-bob or all)", name));
}

void NoiseScenario::validate() const {
    if (!(damping >= 0.0 && damping <= 1.0)) {
        throw std::invalid_argument(fmt::format("damping rate {} outside [0, 1]", damping));
    }
}

std::vector<size_t> NoiseScenario::exposed_qubits() const {
    if (kind == NoiseKind::None) {
        return {};
    }
    switch (exposure) {
        case Exposure::BobOnly:
            return {2};
        case Exposure::AliceAndBob:
            return {1, 2};
        case Exposure::AllThree:
            return {0, 1, 2};
    }
    throw std::invalid_argument("unknown exposure");
}

KrausPair kraus_for(NoiseKind kind, double damping) {
    if (!(damping >= 0.0 && damping <= 1.0)) {
        throw std::invalid_argument(fmt::format("damping rate {} outside [0, 1]", damping));
    }
    KrausPair p;
    p.k0 << 1, 0, 0, std::sqrt(1 - damping);
    switch (kind) {
        case NoiseKind::AmplitudeDamping:
            p.k1 << 0, std::sqrt(damping), 0, 0;
            return p;
        case NoiseKind::PhaseDamping:
            p.k1 << 0, 0, 0, std::sqrt(damping);
            return p;
        case NoiseKind::None:
            break;
    }
    throw std::invalid_argument("kraus_for requires ad or pd");
}

Mat apply_single_qubit_channel(const Mat &rho, size_t qubit, const KrausPair &kraus) {
    auto dim = static_cast<size_t>(rho.rows());
    size_t n = 0;
    while ((size_t{1} << n) < dim) {
        n++;
    }
    if (rho.rows() != rho.cols() || (size_t{1} << n) != dim || qubit >= n) {
        throw std::invalid_argument("qubit index out of range for the operator");
    }
    const size_t bit = size_t{1} << (n - 1 - qubit);
    Mat out = Mat::Zero(rho.rows(), rho.cols());
    for (const Mat2 *k : {&kraus.k0, &kraus.k1}) {
        const Mat2 &K = *k;
        for (size_t i = 0; i < dim; i++) {
            size_t ib = (i & bit) ? 1 : 0;
            size_t i_base = i & ~bit;
            for (size_t j = 0; j < dim; j++) {
                size_t jb = (j & bit) ? 1 : 0;
                size_t j_base = j & ~bit;
                Complex acc = 0;
                for (size_t a = 0; a < 2; a++) {
                    Complex ka = K(ib, a);
                    if (ka == Complex(0)) {
                        continue;
                    }
                    for (size_t b = 0; b < 2; b++) {
                        Complex kb = K(jb, b);
                        if (kb == Complex(0)) {
                            continue;
                        }
                        acc += ka * rho(i_base | (a ? bit : 0), j_base | (b ? bit : 0)) * std::conj(kb);
                    }
                }
                out(i, j) += acc;
            }
        }
    }
    return out;
}

DensityOperator apply_noise(const DensityOperator &rho, const NoiseScenario &scenario) {
    scenario.validate();
    if (rho.dim() != 8) {
        throw std::invalid_argument("apply_noise expects a three-qubit density operator");
    }
    if (scenario.kind == NoiseKind::None) {
        return rho;
    }
    KrausPair kraus = kraus_for(scenario.kind, scenario.damping);
    Mat m = rho.matrix();
    for (size_t q : scenario.exposed_qubits()) {
        m = apply_single_qubit_channel(m, q, kraus);
    }
    return DensityOperator::trusted(std::move(m));
}

double noisy_fidelity_tel(const QuasiBellSpec &spec, const NoiseScenario &scenario, const InputQubit &input) {
    DensityOperator channel = DensityOperator::pure(build_quasi_bell(spec));
    DensityOperator joint = tensor(DensityOperator::pure(input.state()), channel);
    return fidelity_tel_joint(apply_noise(joint, scenario), input, spec.family);
}

double noisy_average_fidelity(const QuasiBellSpec &spec, const NoiseScenario &scenario, QuadratureOrder order) {
    scenario.validate();
    DensityOperator channel = DensityOperator::pure(build_quasi_bell(spec));
    return bloch_average(
        [&](const InputQubit &in) {
            DensityOperator joint = tensor(DensityOperator::pure(in.state()), channel);
            return fidelity_tel_joint(apply_noise(joint, scenario), in, spec.family);
        },
        order);
}

}  // namespace quasibell
