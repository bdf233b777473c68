#include "quasibell/states.h"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace quasibell {

std::string_view family_name(Family f) {
    switch (f) {
        case Family::PsiPlus:
            return "psi+";
        case Family::PsiMinus:
            return "psi-";
        case Family::PhiPlus:
            return "phi+";
        case Family::PhiMinus:
            return "phi-";
    }
    throw std::invalid_argument("unknown family");
}

Family parse_family(std::string_view name) {
    for (Family f : kAllFamilies) {
        if (family_name(f) == name) {
            return f;
        }
    }
    throw std::invalid_argument(fmt::format("unknown family '{}' (expected psi+, psi-, phi+ or phi-)", name));
}

void NonOrthogonality::validate() const {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw std::invalid_argument(fmt::format("overlap modulus r={} outside [0, 1]", r));
    }
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("overlap phase theta is not finite");
    }
}

double NonOrthogonality::theta_reduced() const {
    double t = std::fmod(theta, 2 * std::numbers::pi);
    return t < 0 ? t + 2 * std::numbers::pi : t;
}

StateVector build_general(const GeneralBipartiteSpec &spec) {
    const auto &[mu, nu, p1, p2] = spec;
    if (std::abs(p1) > 1.0 || std::abs(p2) > 1.0) {
        throw std::invalid_argument("overlaps must have modulus at most 1");
    }
    if (mu == Complex(0) && nu == Complex(0)) {
        throw std::invalid_argument("mu and nu cannot both vanish");
    }
    // |mu|^2 + |nu|^2 + mu nu* <gamma|alpha><delta|beta> + mu* nu <alpha|gamma><beta|delta>
    double inv_sq = std::norm(mu) + std::norm(nu) + (mu * std::conj(nu) * std::conj(p1) * p2).real() +
                    (std::conj(mu) * nu * p1 * std::conj(p2)).real();
    if (inv_sq <= kDegeneracyThreshold) {
        throw DegenerateStateError(
            fmt::format("general bipartite state is degenerate: normalization denominator {:.3g}", inv_sq), inv_sq);
    }
    double n12 = 1.0 / std::sqrt(inv_sq);
    double n1 = std::sqrt(std::max(0.0, 1.0 - std::norm(p1)));
    double n2 = std::sqrt(std::max(0.0, 1.0 - std::norm(p2)));
    std::array<Complex, 4> amps{(mu * p2 + nu * p1) * n12, mu * n2 * n12, nu * n1 * n12, 0.0};
    return StateVector::from_amplitudes(amps);
}

double normalization_denominator(const QuasiBellSpec &spec) {
    double r2 = spec.overlap.r * spec.overlap.r;
    double c = std::cos(2 * spec.overlap.theta);
    switch (spec.family) {
        case Family::PsiPlus:
            return 2 * (1 + r2);
        case Family::PsiMinus:
            return 2;
        case Family::PhiPlus:
            return 2 * (1 + r2 * c);
        case Family::PhiMinus:
            return 2 * (1 - r2 * c);
    }
    throw std::invalid_argument("unknown family");
}

void require_constructible(const QuasiBellSpec &spec) {
    spec.overlap.validate();
    double den = normalization_denominator(spec);
    if (den <= kDegeneracyThreshold) {
        const char *which = spec.family == Family::PhiPlus ? "M+ denominator 2(1+r^2 cos 2theta)"
                                                           : "M- denominator 2(1-r^2 cos 2theta)";
        throw DegenerateStateError(fmt::format("{} at r={}, theta={} is degenerate: {} = {:.3g}",
                                               family_name(spec.family), spec.overlap.r, spec.overlap.theta, which, den),
                                   den);
    }
}

PhiCoefficients phi_coefficients(Family family, const NonOrthogonality &overlap) {
    if (family != Family::PhiPlus && family != Family::PhiMinus) {
        throw std::invalid_argument("phi_coefficients requires phi+ or phi-");
    }
    QuasiBellSpec spec{family, overlap};
    require_constructible(spec);
    double sign = family == Family::PhiPlus ? 1.0 : -1.0;
    double r = overlap.r;
    double r2 = r * r;
    double norm = std::sqrt(normalization_denominator(spec));
    Complex e1 = std::polar(1.0, overlap.theta);
    Complex e2 = std::polar(1.0, 2 * overlap.theta);
    return PhiCoefficients{
        (1.0 + sign * r2 * e2) / norm,
        std::sqrt(1 - r2) * r * e1 / norm,
        Complex(1 - r2) / norm,
    };
}

StateVector build_quasi_bell(const QuasiBellSpec &spec) {
    require_constructible(spec);
    double r = spec.overlap.r;
    double r2 = r * r;
    switch (spec.family) {
        case Family::PsiPlus: {
            double den = std::sqrt(2 * (1 + r2));
            Complex eta_amp = 2 * r * std::polar(1.0, spec.overlap.theta) / den;
            Complex epsilon = std::sqrt((1 - r2) / (2 * (1 + r2)));
            std::array<Complex, 4> amps{eta_amp, epsilon, epsilon, 0.0};
            return StateVector::from_amplitudes(amps);
        }
        case Family::PsiMinus: {
            double h = std::numbers::sqrt2 / 2;
            std::array<Complex, 4> amps{0.0, h, -h, 0.0};
            return StateVector::from_amplitudes(amps);
        }
        case Family::PhiPlus:
        case Family::PhiMinus: {
            auto [k, l, m] = phi_coefficients(spec.family, spec.overlap);
            double s = spec.family == Family::PhiPlus ? 1.0 : -1.0;
            std::array<Complex, 4> amps{k, s * l, s * l, s * m};
            return StateVector::from_amplitudes(amps);
        }
    }
    throw std::invalid_argument("unknown family");
}

StateVector bell_state(Family f) {
    double h = std::numbers::sqrt2 / 2;
    std::array<Complex, 4> amps{};
    switch (f) {
        case Family::PsiPlus:
            amps = {0.0, h, h, 0.0};
            break;
        case Family::PsiMinus:
            amps = {0.0, h, -h, 0.0};
            break;
        case Family::PhiPlus:
            amps = {h, 0.0, 0.0, h};
            break;
        case Family::PhiMinus:
            amps = {h, 0.0, 0.0, -h};
            break;
    }
    return StateVector::from_amplitudes(amps);
}

double concurrence(const StateVector &state) {
    if (state.dim() != 4) {
        throw std::invalid_argument("concurrence requires a two-qubit state");
    }
    if (!state.is_normalized()) {
        throw std::invalid_argument("concurrence requires a normalized state");
    }
    return 2 * std::abs(state[0] * state[3] - state[1] * state[2]);
}

}  // namespace quasibell
