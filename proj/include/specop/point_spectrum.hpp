#pragma once

// Closed-form point spectrum and eigenfunctions of V_a on the Bergman-type
// spaces omega_n = binom(n - alpha, n)^{-1}, plus the weight-agnostic tools
// used to cross-check them: the coefficient recurrence, eigenvalue bounds,
// and the boundary (c = +-1) candidate functions.

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "specop/jacobi.hpp"
#include "specop/series.hpp"
#include "specop/weights.hpp"

namespace specop {

enum class Branch { plus, minus };

std::string_view to_string(Branch b);

/// One eigenvalue candidate lambda_j^{+-}.
///
/// The eigenfunction is (z - s)^j / (1 - s z)^{j+2-alpha} on the minus branch
/// and (z + s)^j / (1 + s z)^{j+2-alpha} on the plus branch, s = pole.
struct PointEigen {
  int j = 0;
  Branch branch = Branch::minus;
  double lambda = 0.0;
  double rho = 0.0;
  double pole = 0.0;
  bool valid = false;
  bool degenerate = false;  ///< c = +-1 (b = +-2): boundary case, never an eigenvalue
};

/// sqrt(alpha^2 + 4 a^2 (j+1)(j+1-alpha)).
double rho(double alpha, double a_mod, int j);

/// Pole parameter of the eigenfunction: (rho + alpha)/(2a(j+1)) on the minus
/// branch, (rho - alpha)/(2a(j+1)) on the plus branch, evaluated without cancellation.
double branch_pole(double alpha, double a_mod, int j, Branch branch);

/// Closed-form lambda_j on the requested branch (no validity decision).
/// Evaluated as (a - s)(a - 1/s) or (a + s)(a + 1/s) with s the pole, which
/// equals |a|^2 + 1 + (alpha^2 -+ (2j+2-alpha) rho)/(2(j+1)(j+1-alpha)) but keeps
/// full relative accuracy when lambda is small.
double branch_lambda(double alpha, double a_mod, int j, Branch branch);

/// lambda belonging to a given pole, in extended precision. Cross-checks that
/// compare against eigenfunction_closed should use this rather than the
/// rounded PointEigen::lambda, since coefficients near a sign change are
/// sensitive to the last bit of lambda.
long double lambda_from_pole(double a_mod, double pole, Branch branch);

/// b = (|a|^2 + 1 - lambda)/|a|.
double b_parameter(double a_mod, double lambda);

/// The root c of z^2 - b z + 1 with |c| >= 1 (upper half plane when |c| = 1).
std::complex<double> c_root(double b);

/// Entries for j = 0..jmax, sorted by j, both branches listed where the
/// theorems define them (minus only for alpha < 0). alpha = 0 returns an empty list.
/// Throws std::invalid_argument for alpha >= 1 or a = 0.
std::vector<PointEigen> point_spectrum(double alpha, std::complex<double> a, int jmax);

/// Only the valid entries of point_spectrum.
std::vector<PointEigen> valid_point_spectrum(double alpha, std::complex<double> a, int jmax);

/// Maclaurin coefficients of the eigenfunction, normalized to h_0 = 1, rotated
/// by exp(-i n arg a). Throws for invalid entries.
CoeffSeq eigenfunction_closed(double alpha, std::complex<double> a, const PointEigen& entry,
                              Eigen::Index n_terms);

/// Forward solution of
///   h_{n+1} = [(a^2 + r_n - lambda) h_n - a h_{n-1}] / (a r_n),  h_0 = 1, h_{-1} = 0.
/// This is the unique formal solution for any lambda. It is stable only when it
/// is the dominant solution; decaying eigenfunctions need eigenfunction_minimal.
/// Throws std::invalid_argument for a_mod <= 0.
template <typename Real = double>
Series<Real> eigenfunction_recurrence_t(const WeightSequence& w, Real a_mod, Real lambda, Eigen::Index n_terms) {
  if (!(a_mod > Real(0))) throw std::invalid_argument("eigenfunction_recurrence: a_mod must be > 0");
  Series<Real> h = Series<Real>::Zero(n_terms);
  if (n_terms == 0) return h;
  h(0) = Real(1);
  for (Eigen::Index n = 0; n + 1 < n_terms; ++n) {
    const Real r = static_cast<Real>(w.ratio(static_cast<std::size_t>(n)));
    const Real prev = n > 0 ? h(n - 1) : Real(0);
    h(n + 1) = ((a_mod * a_mod + r - lambda) * h(n) - a_mod * prev) / (a_mod * r);
  }
  return h;
}

CoeffSeq eigenfunction_recurrence(const WeightSequence& w, double a_mod, double lambda, Eigen::Index n_terms);

/// Minimal (decaying) solution of the same recurrence for n >= 1, by backward
/// recurrence from a far tail (Miller's algorithm), normalized to h_0 = 1.
/// The start index grows until the first n_terms coefficients settle.
struct MinimalSolution {
  CoeffSeq coeffs;
  double row0_residual = 0.0;  ///< |(a^2 + r_0 - lambda) h_0 - a r_0 h_1|; zero iff lambda is an eigenvalue
  Eigen::Index start_index = 0;
  bool settled = false;
};

MinimalSolution eigenfunction_minimal(const WeightSequence& w, double a_mod, long double lambda, Eigen::Index n_terms);

enum class BoundsCase { non_decreasing, non_increasing };

struct BoundsResult {
  double lo = 0.0;
  double hi = 0.0;
  BoundsCase case_tag = BoundsCase::non_decreasing;
  bool hi_open = false;  ///< the non-increasing interval is [lo, hi)
};

/// Interval that must contain every eigenvalue of V_a for a monotone weight.
BoundsResult eigenvalue_bounds(const WeightSequence& w, double a_mod);

/// Boundary candidate k (1 -+ z)^{alpha-2} exp(-alpha (1/a -+ 1)/(z -+ 1)) for
/// sign = +1 (upper signs, c = 1) or -1 (c = -1), normalized to h_0 = 1.
/// Requires alpha < 0, a_mod > 0.
struct Case3Candidate {
  CoeffSeq coeffs;
  double unnormalized_h0 = 0.0;
};

Case3Candidate case3_candidate(double alpha, double a_mod, int sign, Eigen::Index n_terms);

/// Greedy nearest match of section eigenvalues to predicted ones; each section
/// value is used at most once, ties go to the smaller j.
struct EigenMatch {
  PointEigen predicted;
  double section_value = 0.0;
  double delta = 0.0;
};

std::vector<EigenMatch> match_eigenvalues(const std::vector<PointEigen>& predicted,
                                          const std::vector<double>& section_values);

}  // namespace specop
