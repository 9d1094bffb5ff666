#pragma once

// Hypergeometric series and the first-order ODE satisfied by eigenfunction
// candidates of V_a on D_alpha with weight omega_n = binom(n + alpha, n).
//
// Nothing here decides membership of the candidate in the space; the norm
// diagnostic only reports how the weighted partial sums grow.

#include <complex>
#include <stdexcept>
#include <string>

#include "specop/series.hpp"
#include "specop/weights.hpp"

namespace specop {

using cplx = std::complex<double>;

/// Parameters for which the construction has no answer: c = +-1, or nu = 0.
class DegenerateParameter : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Rising factorial (beta)_n.
cplx pochhammer(cplx beta, int n);

/// True if zeta is 0, -1, -2, ...
bool is_nonpositive_integer(cplx zeta);

/// Coefficients (beta)_n (gamma)_n / ((zeta)_n n!) of 2F1(beta, gamma; zeta; z).
CoeffSeq gauss_2f1(cplx beta, cplx gamma, cplx zeta, Eigen::Index n_terms);

struct AppellValue {
  cplx value;
  double tail_estimate = 0.0;
};

/// F1(beta; gamma, gamma'; zeta; x, y) summed over m + n < n_terms.
/// Throws std::invalid_argument outside the open unit bidisc.
AppellValue appell_f1(cplx beta, cplx gamma, cplx gamma_p, cplx zeta, cplx x, cplx y, Eigen::Index n_terms);

/// Maclaurin coefficients in z of F1(beta; gamma, gamma'; zeta; x_scale z, y_scale z),
/// summed straight from the double series.
CoeffSeq appell_f1_series(cplx beta, cplx gamma, cplx gamma_p, cplx zeta, cplx x_scale, cplx y_scale,
                          Eigen::Index n_terms);

struct OdeParams {
  double alpha = 0.0;
  double a_mod = 0.0;
  double lambda = 0.0;
  double b = 0.0;
  cplx c;
  cplx mu;
  cplx nu;
};

/// b = (a^2+1-lambda)/a, c the root of z^2 - b z + 1 with |c| >= 1,
/// mu = 1 + (alpha/a)(a-c)/(bc-2), nu = 2 - alpha - mu.
/// Throws DegenerateParameter when |b -+ 2| < 1e-12.
OdeParams dirichlet_params(double alpha, double a_mod, double lambda);

/// h = F(z) / ((1 - z/c)^mu (1 - c z)^nu), F(z) = F1(alpha; 1-mu, 1-nu; alpha+1; z/c, c z).
/// h_0 = 1. Throws DegenerateParameter for c = +-1 or nu = 0.
CoeffSeq dirichlet_candidate(const OdeParams& p, Eigen::Index n_terms);
CoeffSeq dirichlet_candidate(double alpha, double a_mod, double lambda, Eigen::Index n_terms);

struct OdeResidual {
  double max_abs = 0.0;  ///< largest |coefficient| of the residual series
  double max_rel = 0.0;  ///< same, each coefficient divided by the size of the terms that cancel in it
};

/// Residual series of z P(z) h'(z) + h(z)(alpha - (b + alpha/a) z + 2 z^2) - alpha h(0)
/// at indices 0 .. n_check-1, missing coefficients read as 0. The default
/// n_check = size covers what a truncated series determines; a polynomial is
/// checked exactly with n_check = size + 2.
OdeResidual ode_residual(const OdeParams& p, const CoeffSeq& h, Eigen::Index n_check = -1);

/// Growth of the weighted partial norms of the candidate. Labelled as a
/// diagnostic; nothing is asserted about membership.
struct NormDiagnostic {
  Eigen::VectorXd log10_partial_norms;  ///< log10 S_N, N = 0 .. n_terms-1
  double last_increment = 0.0;          ///< log10 S_{N} - log10 S_{N-1} at the end
  double growth_per_term = 0.0;         ///< average log10 increase over the last quarter
  double c_modulus = 0.0;
};

NormDiagnostic dirichlet_norm_diagnostic(double alpha, double a_mod, double lambda, Eigen::Index n_terms);

/// omega_n = binom(n + alpha, n).
WeightSequence dirichlet_binomial_weight(double alpha);

}  // namespace specop
