#include "quasibell/linalg.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace quasibell {

namespace {

bool is_qubit_dim(size_t d) {
    return d == 2 || d == 4 || d == 8;
}

size_t log2_dim(size_t d) {
    size_t n = 0;
    while ((size_t{1} << n) < d) {
        n++;
    }
    return n;
}

bool all_finite(const Mat &m) {
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

StateVector StateVector::from_amplitudes(std::span<const Complex> amps) {
    Vec v(static_cast<Eigen::Index>(amps.size()));
    if (!is_qubit_dim(amps.size())) {
        throw std::invalid_argument("state dimension must be 2, 4 or 8, got " + std::to_string(amps.size()));
    }
    for (size_t k = 0; k < amps.size(); k++) {
        v(static_cast<Eigen::Index>(k)) = amps[k];
    }
    return from_amplitudes(v);
}

StateVector StateVector::from_amplitudes(const Vec &amps) {
    if (!is_qubit_dim(static_cast<size_t>(amps.size()))) {
        throw std::invalid_argument("state dimension must be 2, 4 or 8, got " + std::to_string(amps.size()));
    }
    for (Eigen::Index k = 0; k < amps.size(); k++) {
        if (!std::isfinite(amps(k).real()) || !std::isfinite(amps(k).imag())) {
            throw std::invalid_argument("state amplitude is not finite");
        }
    }
    return StateVector(amps);
}

StateVector StateVector::basis(size_t num_qubits, size_t index) {
    if (num_qubits < 1 || num_qubits > 3) {
        throw std::invalid_argument("num_qubits must be 1, 2 or 3");
    }
    size_t d = size_t{1} << num_qubits;
    if (index >= d) {
        throw std::invalid_argument("basis index out of range");
    }
    Vec v = Vec::Zero(static_cast<Eigen::Index>(d));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(v);
}

size_t StateVector::num_qubits() const {
    return log2_dim(dim());
}

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

DensityDiagnostics diagnose(const Mat &m) {
    DensityDiagnostics d{};
    d.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
    d.trace_error = std::abs(m.trace() - Complex(1.0));
    Mat h = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Mat> solver(h, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = solver.eigenvalues().minCoeff();
    return d;
}

DensityOperator DensityOperator::from_matrix(const Mat &m) {
    if (m.rows() != m.cols() || !is_qubit_dim(static_cast<size_t>(m.rows()))) {
        throw std::invalid_argument("density operator must be square with dimension 2, 4 or 8");
    }
    if (!all_finite(m)) {
        throw std::invalid_argument("density operator entry is not finite");
    }
    DensityDiagnostics d = diagnose(m);
    if (d.hermiticity_error > kHermitianTolerance) {
        throw std::invalid_argument("density operator is not Hermitian (error " + std::to_string(d.hermiticity_error) + ")");
    }
    if (d.trace_error > kTraceTolerance) {
        throw std::invalid_argument("density operator trace differs from 1 by " + std::to_string(d.trace_error));
    }
    if (d.min_eigenvalue < kPsdTolerance) {
        throw std::invalid_argument("density operator has negative eigenvalue " + std::to_string(d.min_eigenvalue));
    }
    return DensityOperator(m);
}

DensityOperator DensityOperator::pure(const StateVector &v) {
    return projector(v);
}

DensityOperator DensityOperator::trusted(Mat m) {
    return DensityOperator(std::move(m));
}

size_t DensityOperator::num_qubits() const {
    return log2_dim(dim());
}

DensityDiagnostics DensityOperator::diagnostics() const {
    return diagnose(m_);
}

Mat kron(const Mat &a, const Mat &b) {
    size_t d = static_cast<size_t>(a.rows() * b.rows());
    if (d > kMaxDim || a.cols() * b.cols() > static_cast<Eigen::Index>(kMaxDim)) {
        throw std::invalid_argument("tensor product exceeds three qubits");
    }
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    if (a.dim() * b.dim() > kMaxDim) {
        throw std::invalid_argument("tensor product exceeds three qubits");
    }
    Vec out(static_cast<Eigen::Index>(a.dim() * b.dim()));
    for (size_t i = 0; i < a.dim(); i++) {
        for (size_t j = 0; j < b.dim(); j++) {
            out(static_cast<Eigen::Index>(i * b.dim() + j)) = a[i] * b[j];
        }
    }
    return StateVector::from_amplitudes(out);
}

DensityOperator tensor(const DensityOperator &a, const DensityOperator &b) {
    return DensityOperator::trusted(kron(a.matrix(), b.matrix()));
}

Mat partial_trace(const Mat &rho, std::span<const size_t> keep, std::span<const size_t> dims) {
    size_t total = 1;
    for (size_t d : dims) {
        if (d == 0) {
            throw std::invalid_argument("subsystem dimension must be positive");
        }
        total *= d;
    }
    if (rho.rows() != rho.cols() || static_cast<size_t>(rho.rows()) != total) {
        throw std::invalid_argument("subsystem dimensions do not match the operator dimension");
    }
    for (size_t k = 0; k < keep.size(); k++) {
        if (keep[k] >= dims.size() || (k > 0 && keep[k] <= keep[k - 1])) {
            throw std::invalid_argument("kept subsystems must be strictly increasing valid indices");
        }
    }

    // Strides of each subsystem in the big-endian flat index.
    std::vector<size_t> stride(dims.size());
    size_t s = 1;
    for (size_t k = dims.size(); k-- > 0;) {
        stride[k] = s;
        s *= dims[k];
    }
    std::vector<size_t> traced;
    for (size_t k = 0; k < dims.size(); k++) {
        if (std::find(keep.begin(), keep.end(), k) == keep.end()) {
            traced.push_back(k);
        }
    }

    // Offsets contributed by every multi-index over a set of subsystems, in
    // big-endian order of that set.
    auto offsets = [&](const auto &subsystems) {
        std::vector<size_t> out{0};
        for (size_t sub : subsystems) {
            std::vector<size_t> next;
            next.reserve(out.size() * dims[sub]);
            for (size_t base : out) {
                for (size_t v = 0; v < dims[sub]; v++) {
                    next.push_back(base + v * stride[sub]);
                }
            }
            out = std::move(next);
        }
        return out;
    };
    std::vector<size_t> kept_off = offsets(keep);
    std::vector<size_t> traced_off = offsets(traced);

    auto dk = static_cast<Eigen::Index>(kept_off.size());
    Mat out = Mat::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; i++) {
        for (Eigen::Index j = 0; j < dk; j++) {
            Complex acc = 0;
            for (size_t t : traced_off) {
                acc += rho(static_cast<Eigen::Index>(kept_off[i] + t), static_cast<Eigen::Index>(kept_off[j] + t));
            }
            out(i, j) = acc;
        }
    }
    return out;
}

DensityOperator partial_trace(const DensityOperator &rho, std::span<const size_t> keep, std::span<const size_t> dims) {
    return DensityOperator::trusted(partial_trace(rho.matrix(), keep, dims));
}

DensityOperator projector(const StateVector &v) {
    if (!v.is_normalized()) {
        throw std::invalid_argument("projector requires a normalized state");
    }
    const Vec &a = v.amplitudes();
    return DensityOperator::trusted(a * a.adjoint());
}

double expectation(const Mat &m, const Vec &v) {
    return (v.adjoint() * m * v)(0, 0).real();
}

}  // namespace quasibell
