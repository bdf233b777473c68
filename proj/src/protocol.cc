#include "quasibell/protocol.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>

namespace quasibell {

namespace {

/// Local unitary U with Bell(f) = (1 (x) U)|phi+>; also the Pauli that outcome f
/// leaves on Bob's qubit in the phi+ frame.
Mat2 frame_pauli(Family f) {
    Mat2 x;
    x << 0, 1, 1, 0;
    Mat2 z;
    z << 1, 0, 0, -1;
    switch (f) {
        case Family::PhiPlus:
            return Mat2::Identity();
        case Family::PhiMinus:
            return z;
        case Family::PsiPlus:
            return x;
        case Family::PsiMinus:
            return x * z;
    }
    throw std::invalid_argument("unknown family");
}

void require_dims(const DensityOperator &rho, size_t dim, const char *what) {
    if (rho.dim() != dim) {
        throw std::invalid_argument(what);
    }
}

DensityOperator joint_state(const DensityOperator &channel, const InputQubit &input) {
    require_dims(channel, 4, "channel must be a two-qubit density operator");
    return tensor(DensityOperator::pure(input.state()), channel);
}

template <int N>
double gauss_polar_sum(const std::function<double(double)> &g) {
    using rule = boost::math::quadrature::gauss<double, N>;
    const auto &x = rule::abscissa();
    const auto &w = rule::weights();
    static_assert(N % 2 == 0, "odd rules carry a node at zero");
    double acc = 0;
    // Fixed summation order: negative nodes ascending, then positive ascending.
    for (size_t k = x.size(); k-- > 0;) {
        acc += w[k] * g(-x[k]);
    }
    for (size_t k = 0; k < x.size(); k++) {
        acc += w[k] * g(x[k]);
    }
    return acc;
}

}  // namespace

Vec2 InputQubit::amplitudes() const {
    return Vec2(std::cos(polar / 2), std::polar(1.0, azimuth) * std::sin(polar / 2));
}

StateVector InputQubit::state() const {
    Vec2 a = amplitudes();
    std::array<Complex, 2> amps{a(0), a(1)};
    return StateVector::from_amplitudes(amps);
}

Mat2 correction_operator(Family outcome, Family frame) {
    return frame_pauli(outcome).adjoint() * frame_pauli(frame).adjoint();
}

std::array<OutcomeRecord, 4> teleport_joint(const DensityOperator &joint, const InputQubit &input, Family frame) {
    require_dims(joint, 8, "joint state must be a three-qubit density operator");
    static constexpr std::array<size_t, 3> dims{2, 2, 2};
    static constexpr std::array<size_t, 1> bob{2};
    Vec in = input.amplitudes();
    Mat id2 = Mat::Identity(2, 2);

    std::array<OutcomeRecord, 4> out{};
    for (size_t i = 0; i < kAllFamilies.size(); i++) {
        Family f = kAllFamilies[i];
        Mat lifted = kron(projector(bell_state(f)).matrix(), id2);
        Mat projected = lifted * joint.matrix() * lifted;
        double p = projected.trace().real();
        OutcomeRecord rec{static_cast<int>(i + 1), f, 0.0, std::nullopt, 0.0};
        if (p >= kZeroProbability) {
            Mat bob_state = partial_trace(Mat(projected / p), bob, dims);
            Mat c = correction_operator(f, frame);
            Mat corrected = c * bob_state * c.adjoint();
            rec.probability = p;
            rec.overlap = expectation(corrected, in);
            rec.corrected_state = DensityOperator::trusted(corrected);
        }
        out[i] = std::move(rec);
    }
    return out;
}

std::array<OutcomeRecord, 4> teleport_once(const DensityOperator &channel, const InputQubit &input, Family frame) {
    return teleport_joint(joint_state(channel, input), input, frame);
}

double fidelity_tel_joint(const DensityOperator &joint, const InputQubit &input, Family frame) {
    require_dims(joint, 8, "joint state must be a three-qubit density operator");
    const Mat &rho = joint.matrix();
    Vec2 in = input.amplitudes();
    double total = 0;
    for (Family f : kAllFamilies) {
        StateVector b = bell_state(f);
        // Unnormalized Bob block <b|rho|b> over Alice's qubits (flat index 2x + c).
        Mat2 block = Mat2::Zero();
        for (int c = 0; c < 2; c++) {
            for (int d = 0; d < 2; d++) {
                Complex acc = 0;
                for (size_t x = 0; x < 4; x++) {
                    if (b[x] == Complex(0)) {
                        continue;
                    }
                    for (size_t y = 0; y < 4; y++) {
                        if (b[y] == Complex(0)) {
                            continue;
                        }
                        acc += std::conj(b[x]) * rho(2 * x + c, 2 * y + d) * b[y];
                    }
                }
                block(c, d) = acc;
            }
        }
        if (block.trace().real() < kZeroProbability) {
            continue;
        }
        Mat2 c = correction_operator(f, frame);
        Vec2 v = c.adjoint() * in;
        total += (v.adjoint() * block * v)(0, 0).real();
    }
    return total;
}

double fidelity_tel(const DensityOperator &channel, const InputQubit &input, Family frame) {
    return fidelity_tel_joint(joint_state(channel, input), input, frame);
}

double bloch_average(const std::function<double(const InputQubit &)> &f, QuadratureOrder order) {
    if (order.azimuth_nodes < 1) {
        throw std::invalid_argument("azimuth node count must be positive");
    }
    const int m = order.azimuth_nodes;
    auto ring = [&](double cos_polar) {
        double polar = std::acos(cos_polar);
        double acc = 0;
        for (int j = 0; j < m; j++) {
            acc += f(InputQubit{polar, 2 * std::numbers::pi * j / m});
        }
        return acc / m;
    };
    double integral;
    switch (order.polar_nodes) {
        case 8:
            integral = gauss_polar_sum<8>(ring);
            break;
        case 16:
            integral = gauss_polar_sum<16>(ring);
            break;
        case 32:
            integral = gauss_polar_sum<32>(ring);
            break;
        case 64:
            integral = gauss_polar_sum<64>(ring);
            break;
        default:
            throw std::invalid_argument("polar node count must be 8, 16, 32 or 64");
    }
    // d(cos) integrates to 2; the azimuth mean already divided by 2 pi.
    return integral / 2;
}

double average_fidelity(const DensityOperator &channel, Family frame, QuadratureOrder order) {
    require_dims(channel, 4, "channel must be a two-qubit density operator");
    return bloch_average([&](const InputQubit &in) { return fidelity_tel(channel, in, frame); }, order);
}

MinimumFidelity bloch_minimum(const std::function<double(const InputQubit &)> &f) {
    constexpr int kPolarSteps = 181;
    constexpr int kAzimuthSteps = 360;
    const double polar_step = std::numbers::pi / (kPolarSteps - 1);
    const double azimuth_step = 2 * std::numbers::pi / kAzimuthSteps;

    MinimumFidelity best{std::numeric_limits<double>::infinity(), {}};
    for (int k = 0; k < kPolarSteps; k++) {
        for (int j = 0; j < kAzimuthSteps; j++) {
            InputQubit in{k * polar_step, j * azimuth_step};
            double v = f(in);
            if (v < best.value) {
                best = {v, in};
            }
        }
    }

    constexpr int kBits = std::numeric_limits<double>::digits / 2;
    InputQubit cur = best.argmin;
    double cur_val = best.value;
    for (int round = 0; round < 60; round++) {
        double before = cur_val;
        auto [p, pv] = boost::math::tools::brent_find_minima(
            [&](double polar) { return f(InputQubit{polar, cur.azimuth}); },
            std::max(0.0, cur.polar - polar_step), std::min(std::numbers::pi, cur.polar + polar_step), kBits);
        if (pv < cur_val) {
            cur.polar = p;
            cur_val = pv;
        }
        auto [a, av] = boost::math::tools::brent_find_minima(
            [&](double azimuth) { return f(InputQubit{cur.polar, azimuth}); }, cur.azimuth - azimuth_step,
            cur.azimuth + azimuth_step, kBits);
        if (av < cur_val) {
            cur.azimuth = a;
            cur_val = av;
        }
        if (before - cur_val <= 1e-16) {
            break;
        }
    }
    if (cur_val < best.value) {
        cur.azimuth = std::fmod(cur.azimuth, 2 * std::numbers::pi);
        if (cur.azimuth < 0) {
            cur.azimuth += 2 * std::numbers::pi;
        }
        best = {cur_val, cur};
    }
    return best;
}

MinimumFidelity min_fidelity(const DensityOperator &channel, Family frame) {
    require_dims(channel, 4, "channel must be a two-qubit density operator");
    return bloch_minimum([&](const InputQubit &in) { return fidelity_tel(channel, in, frame); });
}

}  // namespace quasibell
