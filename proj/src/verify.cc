#include "quasibell/verify.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "quasibell/formulas.h"
#include "quasibell/noise.h"
#include "quasibell/protocol.h"
#include "quasibell/states.h"

namespace quasibell {

namespace {

constexpr double kPi = std::numbers::pi;

/// Tracks the largest deviation seen and where it happened.
class Worst {
   public:
    Worst(std::string name, double tolerance) : name_(std::move(name)), tolerance_(tolerance) {
    }

    template <typename DetailFn>
    void observe(double deviation, DetailFn &&detail) {
        if (std::isnan(deviation)) {
            deviation = std::numeric_limits<double>::infinity();
        }
        if (deviation > worst_) {
            worst_ = deviation;
            detail_ = detail();
        }
    }

    CheckResult result() const {
        return CheckResult{name_, worst_ < tolerance_, worst_, tolerance_, detail_};
    }

   private:
    std::string name_;
    double tolerance_;
    double worst_ = 0;
    std::string detail_;
};

std::string describe(Family f, double r, double theta) {
    return fmt::format("family={} r={} theta={}", family_name(f), r, theta);
}

std::string describe(Family f, double r, double theta, const NoiseScenario &s) {
    return fmt::format("family={} r={} theta={} noise={} eta={} exposure={}", family_name(f), r, theta,
                       noise_kind_name(s.kind), s.damping, exposure_name(s.exposure));
}

bool degenerate(Family f, double r, double theta) {
    return normalization_denominator(QuasiBellSpec{f, {r, theta}}) <= kDegeneracyThreshold;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out;
    for (int k = 0; k < n; k++) {
        out.push_back(n == 1 ? lo : lo + (hi - lo) * k / (n - 1));
    }
    return out;
}

/// theta in [0, 2pi), excluding the endpoint.
std::vector<double> theta_ring(int n) {
    std::vector<double> out;
    for (int k = 0; k < n; k++) {
        out.push_back(2 * kPi * k / n);
    }
    return out;
}

std::vector<NoiseScenario> all_noisy_scenarios(double eta) {
    std::vector<NoiseScenario> out;
    for (NoiseKind k : kNoisyKinds) {
        for (Exposure e : kAllExposures) {
            out.push_back({k, eta, e});
        }
    }
    return out;
}

/// Runs body(k) for k in [0, n) across threads.
void parallel_for(size_t n, const std::function<void(size_t)> &body) {
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t k = next++; k < n; k = next++) {
            body(k);
        }
    };
    size_t threads = std::clamp<size_t>(std::thread::hardware_concurrency(), 1, 16);
    std::vector<std::thread> pool;
    for (size_t t = 1; t < threads; t++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
}

CheckResult check_normalization() {
    Worst w("state normalization", kNormTolerance);
    for (Family f : kAllFamilies) {
        for (double r : linspace(0, 1, 21)) {
            for (double t : theta_ring(24)) {
                if (degenerate(f, r, t)) {
                    continue;
                }
                double n = build_quasi_bell({f, {r, t}}).norm_squared();
                w.observe(std::abs(n - 1), [&] { return describe(f, r, t); });
            }
        }
    }
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int k = 0; k < 500; k++) {
        GeneralBipartiteSpec spec{{u(rng), u(rng)}, {u(rng), u(rng)}, std::polar(std::abs(u(rng)), 3 * u(rng)),
                                  std::polar(std::abs(u(rng)), 3 * u(rng))};
        try {
            double n = build_general(spec).norm_squared();
            w.observe(std::abs(n - 1), [&] { return fmt::format("general spec #{}", k); });
        } catch (const DegenerateStateError &) {
        }
    }
    return w.result();
}

CheckResult check_concurrence() {
    Worst w("concurrence closed forms", 1e-12);
    for (Family f : kAllFamilies) {
        for (double r : linspace(0, 1, 21)) {
            for (double t : theta_ring(24)) {
                if (degenerate(f, r, t)) {
                    continue;
                }
                QuasiBellSpec spec{f, {r, t}};
                double dev = std::abs(concurrence(build_quasi_bell(spec)) - formulas::concurrence(spec));
                w.observe(dev, [&] { return describe(f, r, t); });
            }
        }
    }
    return w.result();
}

CheckResult check_kraus_completeness() {
    Worst w("kraus completeness", 1e-12);
    for (NoiseKind k : kNoisyKinds) {
        for (double eta : linspace(0, 1, 101)) {
            KrausPair p = kraus_for(k, eta);
            Mat2 sum = p.k0.adjoint() * p.k0 + p.k1.adjoint() * p.k1;
            double dev = (sum - Mat2::Identity()).cwiseAbs().maxCoeff();
            w.observe(dev, [&] { return fmt::format("noise={} eta={}", noise_kind_name(k), eta); });
        }
    }
    return w.result();
}

CheckResult check_noise_validity() {
    // A negative eigenvalue below the PSD tolerance counts as deviation 1.
    Worst w("density operator validity after noise", 1e-12);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 60; k++) {
        Family f = kAllFamilies[k % 4];
        double r = 0.95 * u(rng);
        double t = 2 * kPi * u(rng);
        InputQubit in{kPi * u(rng), 2 * kPi * u(rng)};
        DensityOperator joint = tensor(DensityOperator::pure(in.state()),
                                       DensityOperator::pure(build_quasi_bell({f, {r, t}})));
        for (const NoiseScenario &s : all_noisy_scenarios(u(rng))) {
            DensityDiagnostics d = apply_noise(joint, s).diagnostics();
            double psd = d.min_eigenvalue < kPsdTolerance ? 1.0 : 0.0;
            double dev = std::max({d.hermiticity_error, d.trace_error, psd});
            w.observe(dev, [&] { return describe(f, r, t, s); });
        }
    }
    return w.result();
}

CheckResult check_probabilities() {
    Worst w("outcome probabilities sum to 1, F^tel in [0,1]", 1e-10);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 80; k++) {
        Family f = kAllFamilies[k % 4];
        double r = 0.95 * u(rng);
        double t = 2 * kPi * u(rng);
        InputQubit in{kPi * u(rng), 2 * kPi * u(rng)};
        DensityOperator joint = tensor(DensityOperator::pure(in.state()),
                                       DensityOperator::pure(build_quasi_bell({f, {r, t}})));
        std::vector<NoiseScenario> scenarios = all_noisy_scenarios(u(rng));
        scenarios.push_back(NoiseScenario::noiseless());
        for (const NoiseScenario &s : scenarios) {
            DensityOperator noisy = apply_noise(joint, s);
            auto outcomes = teleport_joint(noisy, in, f);
            double sum = 0;
            double fid = 0;
            for (const auto &o : outcomes) {
                sum += o.probability;
                fid += o.probability * o.overlap;
            }
            double dev = std::abs(sum - 1);
            dev = std::max(dev, std::max(-fid, fid - 1));
            w.observe(dev, [&] { return describe(f, r, t, s); });
        }
    }
    return w.result();
}

CheckResult check_quadrature_doubling() {
    Worst w("quadrature doubling stability", 1e-12);
    for (Family f : kAllFamilies) {
        for (auto [r, t] : {std::pair{0.3, 0.4}, std::pair{0.5, kPi / 3}, std::pair{0.9, 2.5}}) {
            std::vector<NoiseScenario> scenarios = all_noisy_scenarios(0.6);
            scenarios.push_back(NoiseScenario::noiseless());
            for (const NoiseScenario &s : scenarios) {
                QuasiBellSpec spec{f, {r, t}};
                double base = noisy_average_fidelity(spec, s, {16, 32});
                double fine = noisy_average_fidelity(spec, s, {32, 64});
                w.observe(std::abs(base - fine), [&] { return describe(f, r, t, s); });
            }
        }
    }
    return w.result();
}

CheckResult check_swap_symmetry_simulated() {
    Worst w("phi+ <-> phi- swap under theta -> theta + pi/2 (simulated)", 1e-9);
    std::vector<NoiseScenario> scenarios = all_noisy_scenarios(0.45);
    scenarios.push_back(NoiseScenario::noiseless());
    for (double r : {0.0, 0.3, 0.6, 0.95}) {
        for (double t : theta_ring(8)) {
            for (const NoiseScenario &s : scenarios) {
                double a = noisy_average_fidelity({Family::PhiPlus, {r, t + kPi / 2}}, s);
                double b = noisy_average_fidelity({Family::PhiMinus, {r, t}}, s);
                w.observe(std::abs(a - b), [&] { return describe(Family::PhiMinus, r, t, s); });
            }
        }
    }
    return w.result();
}

CheckResult check_swap_symmetry_analytic() {
    Worst w("phi+ <-> phi- swap under theta -> theta + pi/2 (closed forms)", 1e-12);
    for (double eta : linspace(0, 1, 11)) {
        std::vector<NoiseScenario> scenarios = all_noisy_scenarios(eta);
        scenarios.push_back(NoiseScenario::noiseless());
        for (double r : linspace(0, 0.95, 20)) {
            for (double t : theta_ring(24)) {
                for (const NoiseScenario &s : scenarios) {
                    double a = formulas::analytic_average_fidelity({Family::PhiPlus, {r, t + kPi / 2}}, s);
                    double b = formulas::analytic_average_fidelity({Family::PhiMinus, {r, t}}, s);
                    w.observe(std::abs(a - b), [&] { return describe(Family::PhiMinus, r, t, s); });
                }
            }
        }
    }
    return w.result();
}

CheckResult check_optimality_identity() {
    // Equality holds with the frame family's own Bell overlap; against the
    // maximal singlet fraction only the Horodecki bound F_ave <= F_opt holds.
    Worst w("optimality: F_ave = (2 f_frame + 1)/3 and F_ave <= F_opt (simulated)", 1e-9);
    struct Case {
        Family f;
        double r;
        double t;
    };
    std::vector<Case> cases;
    for (Family f : kAllFamilies) {
        for (double r : linspace(0, 0.95, 21)) {
            for (double t : theta_ring(24)) {
                cases.push_back({f, r, t});
            }
        }
    }
    std::vector<double> dev(cases.size());
    parallel_for(cases.size(), [&](size_t k) {
        const Case &c = cases[k];
        QuasiBellSpec spec{c.f, {c.r, c.t}};
        double sim = average_fidelity(DensityOperator::pure(build_quasi_bell(spec)), c.f);
        double identity = std::abs(sim - (2 * formulas::frame_overlap(spec) + 1) / 3);
        double bound = std::max(0.0, sim - formulas::optimal_fidelity(spec));
        dev[k] = std::max(identity, bound);
    });
    for (size_t k = 0; k < cases.size(); k++) {
        w.observe(dev[k], [&] { return describe(cases[k].f, cases[k].r, cases[k].t); });
    }
    return w.result();
}

CheckResult check_singlet_fraction() {
    Worst w("singlet fraction: closed form vs four-overlap maximum", 1e-12);
    for (Family f : kAllFamilies) {
        for (double r : linspace(0, 1, 21)) {
            for (double t : theta_ring(24)) {
                if (degenerate(f, r, t)) {
                    continue;
                }
                QuasiBellSpec spec{f, {r, t}};
                double dev = std::abs(formulas::singlet_fraction(spec) -
                                      formulas::singlet_fraction_direct(build_quasi_bell(spec)));
                w.observe(dev, [&] { return describe(f, r, t); });
            }
        }
    }
    return w.result();
}

CheckResult check_masfi() {
    Worst w("MASFI = 2C/(1+C), positive iff C > 0", 1e-12);
    for (Family f : kAllFamilies) {
        for (double r : linspace(0, 1, 21)) {
            for (double t : theta_ring(24)) {
                if (degenerate(f, r, t)) {
                    continue;
                }
                QuasiBellSpec spec{f, {r, t}};
                double c = formulas::concurrence(spec);
                double m = formulas::masfi(spec);
                double dev = std::abs(m - 2 * c / (1 + c));
                if ((m > 1e-12) != (c > 1e-12)) {
                    dev = 1;
                }
                w.observe(dev, [&] { return describe(f, r, t); });
            }
        }
    }
    return w.result();
}

CheckResult check_reduction() {
    Worst w("noisy closed forms reduce to noiseless at eta = 0", 1e-12);
    for (Family f : kAllFamilies) {
        for (double r : linspace(0, 0.95, 20)) {
            for (double t : theta_ring(24)) {
                QuasiBellSpec spec{f, {r, t}};
                double base = formulas::analytic_average_fidelity(spec, NoiseScenario::noiseless());
                for (const NoiseScenario &s : all_noisy_scenarios(0.0)) {
                    double dev = std::abs(formulas::analytic_average_fidelity(spec, s) - base);
                    w.observe(dev, [&] { return describe(f, r, t, s); });
                }
            }
        }
    }
    return w.result();
}

CheckResult check_equivalence_grid() {
    Worst w("closed forms vs simulation, 5x5x5 grid, all 28 cases", 1e-9);
    struct Case {
        QuasiBellSpec spec;
        NoiseScenario scenario;
    };
    std::vector<Case> cases;
    const std::vector<double> rs{0, 0.25, 0.5, 0.75, 0.95};
    const std::vector<double> thetas{0, kPi / 6, kPi / 3, kPi / 2, 2 * kPi / 3};
    const std::vector<double> etas{0, 0.2, 0.5, 0.8, 1};
    for (Family f : kAllFamilies) {
        for (double r : rs) {
            for (double t : thetas) {
                if (degenerate(f, r, t)) {
                    continue;
                }
                cases.push_back({{f, {r, t}}, NoiseScenario::noiseless()});
                for (double e : etas) {
                    for (const NoiseScenario &s : all_noisy_scenarios(e)) {
                        cases.push_back({{f, {r, t}}, s});
                    }
                }
            }
        }
    }
    std::vector<double> dev(cases.size());
    parallel_for(cases.size(), [&](size_t k) {
        const Case &c = cases[k];
        dev[k] = std::abs(formulas::analytic_average_fidelity(c.spec, c.scenario) -
                          noisy_average_fidelity(c.spec, c.scenario));
    });
    for (size_t k = 0; k < cases.size(); k++) {
        const Case &c = cases[k];
        w.observe(dev[k],
                  [&] { return describe(c.spec.family, c.spec.overlap.r, c.spec.overlap.theta, c.scenario); });
    }
    return w.result();
}

CheckResult check_mfi() {
    Worst w("MFI closed forms vs grid + refinement minimum", 1e-7);
    struct Case {
        Family f;
        double r;
        double t;
    };
    std::vector<Case> cases;
    for (Family f : kAllFamilies) {
        for (auto [r, t] : {std::pair{0.5, kPi / 3}, std::pair{0.7, 0.3}, std::pair{0.3, 1.2}}) {
            cases.push_back({f, r, t});
        }
    }
    std::vector<double> dev(cases.size());
    parallel_for(cases.size(), [&](size_t k) {
        const Case &c = cases[k];
        QuasiBellSpec spec{c.f, {c.r, c.t}};
        double sim = min_fidelity(DensityOperator::pure(build_quasi_bell(spec)), c.f).value;
        dev[k] = std::abs(sim - formulas::mfi(spec));
    });
    for (size_t k = 0; k < cases.size(); k++) {
        w.observe(dev[k], [&] { return describe(cases[k].f, cases[k].r, cases[k].t); });
    }
    return w.result();
}

CheckResult check_pd_exposure_order() {
    Worst w("PD at (1/2, pi/3): fidelity non-increasing in exposed qubits", 1e-12);
    for (Family f : kAllFamilies) {
        QuasiBellSpec spec{f, {0.5, kPi / 3}};
        for (double eta : linspace(0, 1, 101)) {
            double prev = formulas::analytic_average_fidelity(spec, NoiseScenario::noiseless());
            for (Exposure e : kAllExposures) {
                NoiseScenario s{NoiseKind::PhaseDamping, eta, e};
                double cur = formulas::analytic_average_fidelity(spec, s);
                w.observe(cur - prev, [&] { return describe(f, 0.5, kPi / 3, s); });
                prev = cur;
            }
        }
    }
    return w.result();
}

}  // namespace

std::vector<VerificationSuite> verification_suites() {
    return {
        {"normalization", check_normalization},
        {"concurrence", check_concurrence},
        {"kraus", check_kraus_completeness},
        {"noise-validity", check_noise_validity},
        {"probabilities", check_probabilities},
        {"quadrature", check_quadrature_doubling},
        {"swap-analytic", check_swap_symmetry_analytic},
        {"swap-simulated", check_swap_symmetry_simulated},
        {"optimality", check_optimality_identity},
        {"singlet-fraction", check_singlet_fraction},
        {"masfi", check_masfi},
        {"mfi", check_mfi},
        {"reduction", check_reduction},
        {"pd-exposure", check_pd_exposure_order},
        {"equivalence", check_equivalence_grid},
    };
}

std::vector<CheckResult> run_verification(const std::function<void(const CheckResult &)> &on_result) {
    std::vector<CheckResult> out;
    for (const auto &suite : verification_suites()) {
        CheckResult r = suite.run();
        if (on_result) {
            on_result(r);
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace quasibell
