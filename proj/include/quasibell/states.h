#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "quasibell/linalg.h"

namespace quasibell {

/// Quasi Bell families, in the order |psi_1> .. |psi_4> used for Bell outcomes.
enum class Family { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

inline constexpr std::array<Family, 4> kAllFamilies = {
    Family::PsiPlus, Family::PsiMinus, Family::PhiPlus, Family::PhiMinus};

/// "psi+", "psi-", "phi+", "phi-".
std::string_view family_name(Family f);
/// Inverse of family_name. Throws std::invalid_argument on unknown names.
Family parse_family(std::string_view name);

/// Raised when a normalization denominator vanishes, i.e. the superposed
/// non-orthogonal product states coincide up to a phase.
class DegenerateStateError : public std::domain_error {
   public:
    DegenerateStateError(const std::string &what, double denominator)
        : std::domain_error(what), denominator_(denominator) {
    }
    double denominator() const {
        return denominator_;
    }

   private:
    double denominator_;
};

inline constexpr double kDegeneracyThreshold = 1e-12;

/// Overlap <alpha|beta> = r e^{i theta}.
struct NonOrthogonality {
    double r = 0;
    double theta = 0;

    /// Throws std::invalid_argument unless 0 <= r <= 1 and theta is finite.
    void validate() const;
    /// theta reduced to [0, 2 pi), for display only.
    double theta_reduced() const;
};

struct QuasiBellSpec {
    Family family = Family::PsiPlus;
    NonOrthogonality overlap;
};

/// mu|alpha>|beta> + nu|gamma>|delta> with p1 = <alpha|gamma>, p2 = <delta|beta>.
struct GeneralBipartiteSpec {
    Complex mu;
    Complex nu;
    Complex p1;
    Complex p2;
};

/// a|00> + b|01> + c|10> in the orthonormal basis built from |alpha> and |delta>.
StateVector build_general(const GeneralBipartiteSpec &spec);

/// Normalization denominator of the family: 2(1 + r^2) for psi+, 2(1 -+ ...) for
/// phi+-. psi- is reported as 2 because its orthogonal-basis form carries no
/// r dependence.
double normalization_denominator(const QuasiBellSpec &spec);

/// Throws DegenerateStateError if the family's denominator is at or below
/// kDegeneracyThreshold. Also validates the overlap parameters.
void require_constructible(const QuasiBellSpec &spec);

/// Coefficients of |phi+->: k|00> +- l(|01> + |10>) +- m|11>.
struct PhiCoefficients {
    Complex k;
    Complex l;
    Complex m;
};
PhiCoefficients phi_coefficients(Family family, const NonOrthogonality &overlap);

/// The quasi Bell state expanded in the orthogonal logical basis.
StateVector build_quasi_bell(const QuasiBellSpec &spec);

/// One of the four orthogonal Bell states.
StateVector bell_state(Family f);

/// Pure-state concurrence 2|a00 a11 - a01 a10|. Throws std::invalid_argument for
/// anything other than a normalized two-qubit state.
double concurrence(const StateVector &state);

}  // namespace quasibell
