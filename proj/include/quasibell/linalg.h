#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace quasibell {

using Complex = std::complex<double>;

/// Largest Hilbert-space dimension handled anywhere in the library (three qubits).
inline constexpr size_t kMaxDim = 8;

using Vec = Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = -1e-10;

/// Pure state on n <= 3 qubits, big-endian basis labels (qubit 0 is the most
/// significant bit of the amplitude index).
class StateVector {
   public:
    StateVector() = default;

    /// Throws std::invalid_argument unless the length is 2, 4 or 8 and every
    /// amplitude is finite. Normalization is not required.
    static StateVector from_amplitudes(std::span<const Complex> amps);
    static StateVector from_amplitudes(const Vec &amps);
    static StateVector basis(size_t num_qubits, size_t index);

    size_t dim() const {
        return static_cast<size_t>(amps_.size());
    }
    size_t num_qubits() const;
    const Vec &amplitudes() const {
        return amps_;
    }
    Complex operator[](size_t k) const {
        return amps_(static_cast<Eigen::Index>(k));
    }
    double norm_squared() const {
        return amps_.squaredNorm();
    }
    bool is_normalized(double tol = kNormTolerance) const;

   private:
    explicit StateVector(Vec amps) : amps_(std::move(amps)) {
    }
    Vec amps_;
};

struct DensityDiagnostics {
    double hermiticity_error;
    double trace_error;
    double min_eigenvalue;

    bool ok() const {
        return hermiticity_error <= kHermitianTolerance && trace_error <= kTraceTolerance &&
               min_eigenvalue >= kPsdTolerance;
    }
};

/// Hermitian, unit-trace, positive semidefinite operator on n <= 3 qubits.
class DensityOperator {
   public:
    DensityOperator() = default;

    /// Validates every invariant; throws std::invalid_argument on violation.
    static DensityOperator from_matrix(const Mat &m);
    static DensityOperator pure(const StateVector &v);

    /// Skips the eigenvalue check. Only for results of operations that are known
    /// to map density operators to density operators (tensor, CPTP maps).
    static DensityOperator trusted(Mat m);

    size_t dim() const {
        return static_cast<size_t>(m_.rows());
    }
    size_t num_qubits() const;
    const Mat &matrix() const {
        return m_;
    }
    Complex operator()(size_t i, size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    double trace() const {
        return m_.trace().real();
    }

    DensityDiagnostics diagnostics() const;

   private:
    explicit DensityOperator(Mat m) : m_(std::move(m)) {
    }
    Mat m_;
};

DensityDiagnostics diagnose(const Mat &m);

/// Kronecker product with `a` as the most significant subsystem.
StateVector tensor(const StateVector &a, const StateVector &b);
DensityOperator tensor(const DensityOperator &a, const DensityOperator &b);
Mat kron(const Mat &a, const Mat &b);

/// Traces out every subsystem not listed in `keep`. `keep` must be strictly
/// increasing indices into `dims`, and the product of `dims` must equal rho's
/// dimension.
DensityOperator partial_trace(const DensityOperator &rho, std::span<const size_t> keep, std::span<const size_t> dims);
Mat partial_trace(const Mat &rho, std::span<const size_t> keep, std::span<const size_t> dims);

/// |v><v|. Throws std::invalid_argument if v is not normalized.
DensityOperator projector(const StateVector &v);

/// <v|m|v>, real part.
double expectation(const Mat &m, const Vec &v);

}  // namespace quasibell
