#include "quasibell/formulas.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quasibell {
namespace formulas {

namespace {

/// Shorthand bundle for the closed-form expressions.
struct Terms {
    double r2;
    double r4;
    double c;  // cos 2theta
    double theta;
};

Terms terms_for(const QuasiBellSpec &spec) {
    require_constructible(spec);
    double r2 = spec.overlap.r * spec.overlap.r;
    return Terms{r2, r2 * r2, std::cos(2 * spec.overlap.theta), spec.overlap.theta};
}

double unknown_family() {
    throw std::invalid_argument("unknown family");
}

// Only Bob's qubit is exposed.

double ad_bob_only(Family f, const Terms &t, double e) {
    const auto [r2, r4, c, theta] = t;
    double s = std::sqrt(1 - e);
    switch (f) {
        case Family::PhiPlus:
            return -1 / (2 * (3 + 3 * r2 * c)) *
                   (-4 + r2 * (2 + 2 * s - 3 * e) - 2 * s + 2 * r4 * (-1 + e) + e + 2 * r2 * (-2 - s + r2 * s) * c);
        case Family::PhiMinus:
            return 1 / (-6 + 6 * r2 * c) *
                   (-4 + r2 * (2 + 2 * s - 3 * e) - 2 * s + 2 * r4 * (-1 + e) + e - 2 * r2 * (-2 - s + r2 * s) * c);
        case Family::PsiPlus:
            return (4 + 2 * s - e + r2 * (-2 * s + e)) / (6 * (1 + r2));
        case Family::PsiMinus:
            // The r-independent row; it is often labelled psi+ a second time.
            return (4 + 2 * s - e) / 6;
    }
    return unknown_family();
}

double pd_bob_only(Family f, const Terms &t, double e) {
    const auto [r2, r4, c, theta] = t;
    double s = std::sqrt(1 - e);
    switch (f) {
        case Family::PhiPlus:
            return (2 + s + r2 * (-s + (-1 + r2) / (1 + r2 * c))) / 3;
        case Family::PhiMinus:
            return (2 + s - r2 * s + (r2 - r4) / (-1 + r2 * c)) / 3;
        case Family::PsiPlus:
            return (2 + s - r2 * s) / (3 + 3 * r2);
        case Family::PsiMinus:
            return (2 + s) / 3;
    }
    return unknown_family();
}

// Alice's and Bob's channel qubits are exposed.

double ad_alice_and_bob(Family f, const Terms &t, double e) {
    const auto [r2, r4, c, theta] = t;
    double em1 = -1 + e;
    switch (f) {
        case Family::PhiPlus:
            return 1 / (3 + 3 * r2 * c) *
                   (3 - 2 * r2 * em1 * em1 + r4 * em1 * em1 - 2 * e + e * e + r2 * (3 + r2 * em1 - e) * c);
        case Family::PhiMinus:
            return -1 / (-3 + 3 * r2 * c) *
                   (3 - 2 * r2 * em1 * em1 + r4 * em1 * em1 + (-2 + e) * e + r2 * (-3 - r2 * em1 + e) * c);
        case Family::PsiPlus:
            return (3 - 2 * e + r2 * (-1 + 2 * e)) / (3 * (1 + r2));
        case Family::PsiMinus:
            return 1 - 2 * e / 3;
    }
    return unknown_family();
}

double pd_alice_and_bob(Family f, const Terms &t, double e) {
    const auto [r2, r4, c, theta] = t;
    switch (f) {
        case Family::PhiPlus:
            return (3 - e + r2 * (-1 + e + (-1 + r2) / (1 + r2 * c))) / 3;
        case Family::PhiMinus:
            return (3 + r2 * (-1 + e) - e + (r2 - r4) / (-1 + r2 * c)) / 3;
        case Family::PsiPlus:
            return (3 + r2 * (-1 + e) - e) / (3 * (1 + r2));
        case Family::PsiMinus:
            return 1 - e / 3;
    }
    return unknown_family();
}

// All three qubits are exposed.

double ad_all_three_phi_minus(double r2, double r4, double c, double e) {
    double s = std::sqrt(1 - e);
    double em1 = -1 + e;
    return 1 / (2 * (-3 + 3 * r2 * c)) *
           (-2 * (2 + s) + e * (3 + 2 * s + 2 * (-2 + e) * e) - 2 * r2 * em1 * (1 + s + e * (-3 + 2 * e)) +
            2 * r4 * em1 * em1 * em1 + r2 * (4 + 2 * s + 2 * s * (r2 * em1 - e) - e) * c);
}

double ad_all_three(Family f, const Terms &t, double e) {
    const auto [r2, r4, c, theta] = t;
    double s = std::sqrt(1 - e);
    switch (f) {
        case Family::PhiPlus:
            // cos 2(theta + pi/2) = -cos 2theta
            return ad_all_three_phi_minus(r2, r4, -c, e);
        case Family::PhiMinus:
            return ad_all_three_phi_minus(r2, r4, c, e);
        case Family::PsiPlus:
            return 1 / (6 * (1 + r2)) *
                   (2 * (2 + s) + e * (-3 - 2 * s + 2 * e) + r2 * (-2 * s + (5 + 2 * s - 2 * e) * e));
        case Family::PsiMinus:
            return (4 + 2 * s - 3 * e - 2 * s * e + 2 * e * e) / 6;
    }
    return unknown_family();
}

double pd_all_three(Family f, const Terms &t, double e) {
    const auto [r2, r4, c, theta] = t;
    double s = std::sqrt(1 - e);
    switch (f) {
        case Family::PhiPlus:
            return 1 / (3 + 3 * r2 * c) *
                   (2 + r4 + s - s * e + r2 * (-1 - s + s * e) +
                    r2 * (2 + s - r2 * std::pow(1 - e, 1.5) - s * e) * c);
        case Family::PhiMinus:
            return (2 + s - r2 * s - s * e + r2 * s * e + (r2 - r4) / (-1 + r2 * c)) / 3;
        case Family::PsiPlus:
            return (2 + s + s * (r2 * (-1 + e) - e)) / (3 * (1 + r2));
        case Family::PsiMinus:
            return (2 + std::pow(1 - e, 1.5)) / 3;
    }
    return unknown_family();
}

}  // namespace

double concurrence(const QuasiBellSpec &spec) {
    const auto [r2, r4, c, theta] = terms_for(spec);
    switch (spec.family) {
        case Family::PsiPlus:
            return (1 - r2) / (1 + r2);
        case Family::PsiMinus:
            return 1;
        case Family::PhiPlus:
            return (1 - r2) / (1 + r2 * c);
        case Family::PhiMinus:
            return (1 - r2) / (1 - r2 * c);
    }
    return unknown_family();
}

double masfi(const QuasiBellSpec &spec) {
    const auto [r2, r4, c, theta] = terms_for(spec);
    double sin2 = std::sin(theta) * std::sin(theta);
    double cos2 = std::cos(theta) * std::cos(theta);
    switch (spec.family) {
        case Family::PsiPlus:
            return 1 - r2;
        case Family::PsiMinus:
            return 1;
        case Family::PhiPlus:
            return (1 - r2) / (1 - r2 * sin2);
        case Family::PhiMinus:
            return (1 - r2) / (1 - r2 * cos2);
    }
    return unknown_family();
}

double mfi(const QuasiBellSpec &spec) {
    const auto [r2, r4, c, theta] = terms_for(spec);
    double sin2 = std::sin(theta) * std::sin(theta);
    double cos2 = std::cos(theta) * std::cos(theta);
    switch (spec.family) {
        case Family::PsiPlus:
            return (1 - r2) / (1 + r2);
        case Family::PsiMinus:
            return 1;
        case Family::PhiPlus:
            return (1 - r2 * (2 - r2) * sin2) / (1 + r2 * c);
        case Family::PhiMinus:
            return (1 - r2 * (2 - r2) * cos2) / (1 - r2 * c);
    }
    return unknown_family();
}

std::array<double, 4> bell_overlaps(const QuasiBellSpec &spec) {
    const auto [r2, r4, c, theta] = terms_for(spec);
    switch (spec.family) {
        case Family::PsiPlus: {
            double phi = r2 / (1 + r2);
            return {(1 - r2) / (1 + r2), 0, phi, phi};
        }
        case Family::PsiMinus:
            return {0, 1, 0, 0};
        case Family::PhiPlus:
            return {(r2 - r4) / (1 + r2 * c), 0, (2 - 2 * r2 + r4 + c * (2 * r2 - r4)) / (2 * (1 + r2 * c)),
                    r4 * (1 + c) / (2 * (1 + r2 * c))};
        case Family::PhiMinus:
            return {(r2 - r4) / (1 - r2 * c), 0, r4 * (1 - c) / (2 * (1 - r2 * c)),
                    (2 - 2 * r2 + r4 - c * (2 * r2 - r4)) / (2 * (1 - r2 * c))};
    }
    throw std::invalid_argument("unknown family");
}

double frame_overlap(const QuasiBellSpec &spec) {
    return bell_overlaps(spec)[static_cast<size_t>(spec.family)];
}

double singlet_fraction(const QuasiBellSpec &spec) {
    std::array<double, 4> o = bell_overlaps(spec);
    return *std::max_element(o.begin(), o.end());
}

double singlet_fraction_direct(const StateVector &state) {
    if (state.dim() != 4) {
        throw std::invalid_argument("singlet fraction requires a two-qubit state");
    }
    double best = 0;
    for (Family f : kAllFamilies) {
        Complex overlap = bell_state(f).amplitudes().dot(state.amplitudes());
        best = std::max(best, std::norm(overlap));
    }
    return best;
}

double optimal_fidelity(const QuasiBellSpec &spec) {
    return (2 * singlet_fraction(spec) + 1) / 3;
}

double noiseless_average_fidelity(const QuasiBellSpec &spec) {
    const auto [r2, r4, c, theta] = terms_for(spec);
    switch (spec.family) {
        case Family::PsiPlus:
            return (3 - r2) / (3 * (1 + r2));
        case Family::PsiMinus:
            return 1;
        case Family::PhiPlus:
            return (3 - 2 * r2 + r4 - r2 * (r2 - 3) * c) / (3 * (1 + r2 * c));
        case Family::PhiMinus:
            return (3 - 2 * r2 + r4 + r2 * (r2 - 3) * c) / (3 * (1 - r2 * c));
    }
    return unknown_family();
}

double analytic_average_fidelity(const QuasiBellSpec &spec, const NoiseScenario &scenario) {
    scenario.validate();
    if (scenario.kind == NoiseKind::None) {
        return noiseless_average_fidelity(spec);
    }
    Terms t = terms_for(spec);
    double e = scenario.damping;
    bool ad = scenario.kind == NoiseKind::AmplitudeDamping;
    switch (scenario.exposure) {
        case Exposure::BobOnly:
            return ad ? ad_bob_only(spec.family, t, e) : pd_bob_only(spec.family, t, e);
        case Exposure::AliceAndBob:
            return ad ? ad_alice_and_bob(spec.family, t, e) : pd_alice_and_bob(spec.family, t, e);
        case Exposure::AllThree:
            return ad ? ad_all_three(spec.family, t, e) : pd_all_three(spec.family, t, e);
    }
    throw std::invalid_argument("unknown exposure");
}

double ad_all_three_phi_plus_uncorrected(double r, double theta, double eta) {
    Terms t = terms_for(QuasiBellSpec{Family::PhiPlus, {r, theta}});
    return ad_bob_only(Family::PhiPlus, t, eta);
}

}  // namespace formulas

FidelityReport make_report(const QuasiBellSpec &spec, const NoiseScenario &scenario) {
    FidelityReport rep{};
    rep.spec = spec;
    rep.scenario = scenario;
    rep.concurrence = formulas::concurrence(spec);
    rep.masfi = formulas::masfi(spec);
    rep.mfi = formulas::mfi(spec);
    rep.singlet_fraction = formulas::singlet_fraction(spec);
    rep.f_opt = formulas::optimal_fidelity(spec);
    rep.f_ave = formulas::analytic_average_fidelity(spec, scenario);
    return rep;
}

}  // namespace quasibell
