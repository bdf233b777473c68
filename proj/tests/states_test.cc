#include "quasibell/states.h"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "oracles.h"

using namespace quasibell;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_amps(const StateVector &s, std::array<Complex, 4> expected, double tol) {
    ASSERT_EQ(s.dim(), 4u);
    for (size_t k = 0; k < 4; k++) {
        EXPECT_NEAR(std::abs(s[k] - expected[k]), 0, tol) << "amplitude " << k;
    }
}

}  // namespace

TEST(states, general_orthogonal_limit_is_bell_psi_plus) {
    double h = std::sqrt(0.5);
    StateVector s = build_general({h, h, 0, 0});
    expect_amps(s, {0, h, h, 0}, 1e-15);
}

TEST(states, general_separable_limit) {
    // nu = 0 leaves |alpha>|beta>; with <delta|beta> = 0 that is |01>.
    expect_amps(build_general({1, 0, 0, 0}), {0, 1, 0, 0}, 1e-15);
    expect_amps(build_general({1, 0, 0, 1}), {1, 0, 0, 0}, 1e-15);
}

TEST(states, general_matches_direct_construction_in_c2) {
    // Oracle: build mu|alpha>|beta> + nu|gamma>|delta> from explicit vectors in
    // C^2 with the prescribed overlaps and normalize by the vector norm.
    auto direct = [](Complex mu, Complex nu, Complex p1, Complex p2) {
        oracle::VecX alpha(2), gamma(2), beta(2), delta(2);
        alpha << 1, 0;
        gamma << p1, std::sqrt(1 - std::norm(p1));
        delta << 1, 0;
        beta << p2, std::sqrt(1 - std::norm(p2));
        oracle::VecX v = mu * oracle::kron(alpha, beta) + nu * oracle::kron(gamma, delta);
        return oracle::VecX(v / v.norm());
    };
    double h = std::sqrt(0.5);
    // mu = nu = 1/sqrt2, p1 = p2 = 0.5: a = 1/sqrt(2*1.25), b = c = sqrt(0.375/1.25).
    StateVector s = build_general({h, h, 0.5, 0.5});
    expect_amps(s, {0.63245553203367588, 0.54772255750516607, 0.54772255750516607, 0}, 1e-15);
    EXPECT_NEAR(s.norm_squared(), 1, 1e-12);
    oracle::VecX d = direct(h, h, 0.5, 0.5);
    for (size_t k = 0; k < 4; k++) {
        EXPECT_NEAR(std::abs(s[k] - d(static_cast<Eigen::Index>(k))), 0, 1e-14);
    }

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 200; trial++) {
        Complex mu(u(rng), u(rng)), nu(u(rng), u(rng));
        Complex p1 = std::polar(std::abs(u(rng)), 3 * u(rng));
        Complex p2 = std::polar(std::abs(u(rng)), 3 * u(rng));
        StateVector g = build_general({mu, nu, p1, p2});
        EXPECT_NEAR(g.norm_squared(), 1, 1e-12);
        oracle::VecX dd = direct(mu, nu, p1, p2);
        // Same state up to a global phase, and the same concurrence 2|bc|.
        EXPECT_NEAR(std::abs(std::abs(oracle::VecX(g.amplitudes()).dot(dd)) - 1), 0, 1e-12);
        EXPECT_NEAR(concurrence(g), 2 * std::abs(g[1] * g[2]), 1e-12);
    }
}

TEST(states, general_degenerate_raises) {
    // mu|a>|b> - mu|a>|b>: the two products coincide.
    EXPECT_THROW(build_general({1, -1, 1, 1}), DegenerateStateError);
    EXPECT_THROW(build_general({0, 0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(build_general({1, 1, 1.5, 0}), std::invalid_argument);
}

TEST(states, psi_minus_is_singlet_for_every_overlap) {
    double h = std::sqrt(0.5);
    for (double r : {0.0, 0.3, 0.99, 1.0}) {
        for (double t : {0.0, 1.0, kPi / 2, 5.0}) {
            expect_amps(build_quasi_bell({Family::PsiMinus, {r, t}}), {0, h, -h, 0}, 1e-15);
        }
    }
}

TEST(states, orthogonal_limit_gives_the_four_bell_states) {
    for (Family f : kAllFamilies) {
        for (double t : {0.0, 0.7, 2.0}) {
            StateVector q = build_quasi_bell({f, {0, t}});
            StateVector b = bell_state(f);
            for (size_t k = 0; k < 4; k++) {
                EXPECT_NEAR(std::abs(q[k] - b[k]), 0, 1e-15) << family_name(f);
            }
        }
    }
}

TEST(states, phi_plus_matches_expansion_of_non_orthogonal_products) {
    // Oracle: |alpha> = |0>, |beta> = r e^{i theta}|0> + sqrt(1-r^2)|1>, then
    // |alpha alpha> +- |beta beta> normalized.
    for (Family f : {Family::PhiPlus, Family::PhiMinus}) {
        for (auto [r, t] : {std::pair{0.5, kPi / 3}, std::pair{0.8, 0.2}, std::pair{0.3, 2.9}}) {
            oracle::VecX alpha(2), beta(2);
            alpha << 1, 0;
            beta << std::polar(r, t), std::sqrt(1 - r * r);
            double s = f == Family::PhiPlus ? 1 : -1;
            oracle::VecX v = oracle::kron(alpha, alpha) + s * oracle::kron(beta, beta);
            v /= v.norm();
            StateVector q = build_quasi_bell({f, {r, t}});
            EXPECT_NEAR(q.norm_squared(), 1, 1e-12);
            for (size_t k = 0; k < 4; k++) {
                EXPECT_NEAR(std::abs(q[k] - v(static_cast<Eigen::Index>(k))), 0, 1e-14);
            }
        }
    }
    // The same oracle for psi+: |alpha beta> + |beta alpha>.
    for (auto [r, t] : {std::pair{0.5, kPi / 3}, std::pair{1.0, 0.4}}) {
        oracle::VecX alpha(2), beta(2);
        alpha << 1, 0;
        beta << std::polar(r, t), std::sqrt(1 - r * r);
        oracle::VecX v = oracle::kron(alpha, beta) + oracle::kron(beta, alpha);
        v /= v.norm();
        StateVector q = build_quasi_bell({Family::PsiPlus, {r, t}});
        for (size_t k = 0; k < 4; k++) {
            EXPECT_NEAR(std::abs(q[k] - v(static_cast<Eigen::Index>(k))), 0, 1e-14);
        }
    }
}

TEST(states, phi_plus_point_value) {
    // r = 1/2, theta = pi/3: denominator 2(1 + cos(2pi/3)/4) = 1.75.
    StateVector q = build_quasi_bell({Family::PhiPlus, {0.5, kPi / 3}});
    double d = std::sqrt(1.75);
    Complex k = (1.0 + 0.25 * std::polar(1.0, 2 * kPi / 3)) / d;
    Complex l = std::sqrt(0.75) * 0.5 * std::polar(1.0, kPi / 3) / d;
    expect_amps(q, {k, l, l, 0.75 / d}, 1e-15);
    EXPECT_NEAR(q.norm_squared(), 1, 1e-12);
}

TEST(states, degenerate_phi_states_raise) {
    EXPECT_THROW(build_quasi_bell({Family::PhiMinus, {1, 0}}), DegenerateStateError);
    EXPECT_THROW(build_quasi_bell({Family::PhiPlus, {1, kPi / 2}}), DegenerateStateError);
    EXPECT_NO_THROW(build_quasi_bell({Family::PhiPlus, {1, 0}}));
    EXPECT_NO_THROW(build_quasi_bell({Family::PsiPlus, {1, 0}}));
    try {
        build_quasi_bell({Family::PhiMinus, {1, 0}});
    } catch (const DegenerateStateError &e) {
        EXPECT_NE(std::string(e.what()).find("M-"), std::string::npos);
        EXPECT_EQ(e.denominator(), 0.0);
    }
}

TEST(states, invalid_overlap_rejected) {
    EXPECT_THROW(build_quasi_bell({Family::PsiPlus, {1.5, 0}}), std::invalid_argument);
    EXPECT_THROW(build_quasi_bell({Family::PsiPlus, {-0.1, 0}}), std::invalid_argument);
    EXPECT_THROW(build_quasi_bell({Family::PsiPlus, {0.5, std::nan("")}}), std::invalid_argument);
}

TEST(states, theta_reduced) {
    EXPECT_NEAR((NonOrthogonality{0.5, 2 * kPi + 1}.theta_reduced()), 1, 1e-15);
    EXPECT_NEAR((NonOrthogonality{0.5, -1}.theta_reduced()), 2 * kPi - 1, 1e-15);
}

TEST(states, concurrence_point_values) {
    EXPECT_NEAR(concurrence(build_quasi_bell({Family::PsiPlus, {0, 0}})), 1, 1e-15);
    // (1 - 0.25)/(1 + 0.25)
    EXPECT_NEAR(concurrence(build_quasi_bell({Family::PsiPlus, {0.5, 0}})), 0.6, 1e-15);
    EXPECT_NEAR(concurrence(build_quasi_bell({Family::PhiPlus, {0.7, kPi / 2}})), 1, 1e-12);
    EXPECT_NEAR(concurrence(build_quasi_bell({Family::PhiMinus, {0.7, 0}})), 1, 1e-12);
}

TEST(states, concurrence_closed_forms) {
    for (int i = 0; i <= 20; i++) {
        double r = i / 20.0;
        for (int k = 0; k < 24; k++) {
            double t = 2 * kPi * k / 24;
            double r2 = r * r;
            EXPECT_NEAR(concurrence(build_quasi_bell({Family::PsiPlus, {r, t}})), (1 - r2) / (1 + r2), 1e-12);
            EXPECT_NEAR(concurrence(build_quasi_bell({Family::PsiMinus, {r, t}})), 1, 1e-12);
            for (Family f : {Family::PhiPlus, Family::PhiMinus}) {
                double s = f == Family::PhiPlus ? 1 : -1;
                double den = 1 + s * r2 * std::cos(2 * t);
                if (2 * den <= kDegeneracyThreshold) {
                    continue;
                }
                EXPECT_NEAR(concurrence(build_quasi_bell({f, {r, t}})), (1 - r2) / den, 1e-12);
            }
        }
    }
}

TEST(states, psi_plus_concurrence_depends_only_on_r) {
    double prev = 2;
    for (int i = 0; i <= 50; i++) {
        double r = i / 50.0;
        double c0 = concurrence(build_quasi_bell({Family::PsiPlus, {r, 0}}));
        for (int k = 1; k < 24; k++) {
            double c = concurrence(build_quasi_bell({Family::PsiPlus, {r, 2 * kPi * k / 24}}));
            EXPECT_LT(std::abs(c - c0), 1e-12);
        }
        EXPECT_LT(c0, prev);
        prev = c0;
    }
}

TEST(states, phi_family_swap_symmetry) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 200; trial++) {
        NonOrthogonality o{0.98 * u(rng), 2 * kPi * u(rng)};
        NonOrthogonality shifted{o.r, o.theta + kPi / 2};
        PhiCoefficients minus = phi_coefficients(Family::PhiMinus, o);
        PhiCoefficients plus = phi_coefficients(Family::PhiPlus, shifted);
        EXPECT_NEAR(std::abs(plus.k - minus.k), 0, 1e-12);
        EXPECT_NEAR(std::abs(plus.m - minus.m), 0, 1e-12);
        EXPECT_NEAR(std::abs(plus.l), std::abs(minus.l), 1e-12);
        EXPECT_NEAR(concurrence(build_quasi_bell({Family::PhiPlus, shifted})),
                    concurrence(build_quasi_bell({Family::PhiMinus, o})), 1e-12);
    }
}

TEST(states, concurrence_rejects_bad_input) {
    EXPECT_THROW(concurrence(StateVector::basis(1, 0)), std::invalid_argument);
    std::array<Complex, 4> unnormalized{1, 1, 0, 0};
    EXPECT_THROW(concurrence(StateVector::from_amplitudes(unnormalized)), std::invalid_argument);
}

TEST(states, family_names_round_trip) {
    for (Family f : kAllFamilies) {
        EXPECT_EQ(parse_family(family_name(f)), f);
    }
    EXPECT_THROW(parse_family("chi"), std::invalid_argument);
}
