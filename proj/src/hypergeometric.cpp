#include "specop/hypergeometric.hpp"

#include <cmath>
#include <limits>

#include "specop/point_spectrum.hpp"

namespace specop {
namespace {

constexpr double kDegenerateTol = 1e-12;

// (gamma)_m s^m / m!  for m < n_terms
CoeffSeq rising_geometric(cplx gamma, cplx s, Eigen::Index n_terms) {
  CoeffSeq out(n_terms);
  if (n_terms == 0) return out;
  out(0) = 1.0;
  for (Eigen::Index m = 0; m + 1 < n_terms; ++m)
    out(m + 1) = out(m) * (gamma + static_cast<double>(m)) * s / static_cast<double>(m + 1);
  return out;
}

// (beta)_k / (zeta)_k for k < n_terms
CoeffSeq pochhammer_ratio(cplx beta, cplx zeta, Eigen::Index n_terms) {
  CoeffSeq out(n_terms);
  if (n_terms == 0) return out;
  out(0) = 1.0;
  for (Eigen::Index k = 0; k + 1 < n_terms; ++k)
    out(k + 1) = out(k) * (beta + static_cast<double>(k)) / (zeta + static_cast<double>(k));
  return out;
}

double log_add(double x, double y) {
  if (x == -std::numeric_limits<double>::infinity()) return y;
  if (y == -std::numeric_limits<double>::infinity()) return x;
  const double hi = std::max(x, y), lo = std::min(x, y);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

cplx pochhammer(cplx beta, int n) {
  cplx acc = 1.0;
  for (int k = 0; k < n; ++k) acc *= beta + static_cast<double>(k);
  return acc;
}

bool is_nonpositive_integer(cplx zeta) {
  if (zeta.imag() != 0.0) return false;
  const double re = zeta.real();
  return re <= 0.0 && re == std::round(re);
}

CoeffSeq gauss_2f1(cplx beta, cplx gamma, cplx zeta, Eigen::Index n_terms) {
  if (is_nonpositive_integer(zeta)) throw std::invalid_argument("gauss_2f1: zeta is a nonpositive integer");
  CoeffSeq out(n_terms);
  if (n_terms == 0) return out;
  out(0) = 1.0;
  for (Eigen::Index n = 0; n + 1 < n_terms; ++n) {
    const double k = static_cast<double>(n);
    out(n + 1) = out(n) * (beta + k) * (gamma + k) / ((zeta + k) * (k + 1.0));
  }
  return out;
}

AppellValue appell_f1(cplx beta, cplx gamma, cplx gamma_p, cplx zeta, cplx x, cplx y, Eigen::Index n_terms) {
  if (is_nonpositive_integer(zeta)) throw std::invalid_argument("appell_f1: zeta is a nonpositive integer");
  if (!(std::abs(x) < 1.0 && std::abs(y) < 1.0)) throw std::invalid_argument("appell_f1: (x, y) outside the unit bidisc");
  const CoeffSeq lead = pochhammer_ratio(beta, zeta, n_terms);
  const CoeffSeq xs = rising_geometric(gamma, x, n_terms);
  const CoeffSeq ys = rising_geometric(gamma_p, y, n_terms);

  AppellValue out{0.0, 0.0};
  double last_diag = 0.0;
  for (Eigen::Index k = 0; k < n_terms; ++k) {
    cplx diag = 0.0;
    double diag_abs = 0.0;
    for (Eigen::Index m = 0; m <= k; ++m) {
      const cplx t = lead(k) * xs(m) * ys(k - m);
      diag += t;
      diag_abs += std::abs(t);
    }
    out.value += diag;
    last_diag = diag_abs;
  }
  // Remaining diagonals are dominated by a geometric series in max(|x|, |y|).
  const double rho = std::max(std::abs(x), std::abs(y));
  out.tail_estimate = last_diag * rho / (1.0 - rho);
  return out;
}

CoeffSeq appell_f1_series(cplx beta, cplx gamma, cplx gamma_p, cplx zeta, cplx x_scale, cplx y_scale,
                          Eigen::Index n_terms) {
  if (is_nonpositive_integer(zeta)) throw std::invalid_argument("appell_f1_series: zeta is a nonpositive integer");
  const CoeffSeq lead = pochhammer_ratio(beta, zeta, n_terms);
  const CoeffSeq xs = rising_geometric(gamma, x_scale, n_terms);
  const CoeffSeq ys = rising_geometric(gamma_p, y_scale, n_terms);
  CoeffSeq out(n_terms);
  for (Eigen::Index k = 0; k < n_terms; ++k) {
    cplx diag = 0.0;
    for (Eigen::Index m = 0; m <= k; ++m) diag += xs(m) * ys(k - m);
    out(k) = lead(k) * diag;
  }
  return out;
}

OdeParams dirichlet_params(double alpha, double a_mod, double lambda) {
  if (!(alpha > 0.0)) throw std::invalid_argument("dirichlet_params: alpha must be > 0");
  if (!(a_mod > 0.0)) throw std::invalid_argument("dirichlet_params: a must be > 0");
  OdeParams p;
  p.alpha = alpha;
  p.a_mod = a_mod;
  p.lambda = lambda;
  p.b = b_parameter(a_mod, lambda);
  if (std::abs(p.b - 2.0) < kDegenerateTol || std::abs(p.b + 2.0) < kDegenerateTol)
    throw DegenerateParameter("dirichlet_params: degenerate root c = " + std::string(p.b > 0 ? "1" : "-1"));
  p.c = c_root(p.b);
  p.mu = 1.0 + (alpha / a_mod) * (a_mod - p.c) / (p.b * p.c - 2.0);
  p.nu = 1.0 - alpha - (alpha / a_mod) * (a_mod - p.c) / (p.b * p.c - 2.0);
  return p;
}

namespace {

// Candidate coefficients of h(z / scale), so entry k is h_k scale^{-k}.
CoeffSeq scaled_candidate(const OdeParams& p, double scale, Eigen::Index n_terms) {
  if (std::abs(p.nu) < kDegenerateTol)
    throw DegenerateParameter("dirichlet_candidate: nu = 0 is not covered by the construction");
  const cplx x = 1.0 / (p.c * scale);
  const cplx y = p.c / scale;
  const CoeffSeq f = appell_f1_series(p.alpha, 1.0 - p.mu, 1.0 - p.nu, p.alpha + 1.0, x, y, n_terms);
  const CoeffSeq left = binomial_series(x, -p.mu, n_terms);
  const CoeffSeq right = binomial_series(y, -p.nu, n_terms);
  return product(product(f, left, n_terms), right, n_terms);
}

}  // namespace

CoeffSeq dirichlet_candidate(const OdeParams& p, Eigen::Index n_terms) { return scaled_candidate(p, 1.0, n_terms); }

CoeffSeq dirichlet_candidate(double alpha, double a_mod, double lambda, Eigen::Index n_terms) {
  return dirichlet_candidate(dirichlet_params(alpha, a_mod, lambda), n_terms);
}

OdeResidual ode_residual(const OdeParams& p, const CoeffSeq& h, Eigen::Index n_check) {
  // z P(z) h' = (z - b z^2 + z^3) h'  ->  coefficient k: k h_k - b (k-1) h_{k-1} + (k-2) h_{k-2}
  // h q, q = alpha - (b + alpha/a) z + 2 z^2
  const Eigen::Index n = n_check < 0 ? h.size() : n_check;
  const double q1 = p.b + p.alpha / p.a_mod;
  OdeResidual out;
  auto at = [&](Eigen::Index i) { return i >= 0 && i < h.size() ? h(i) : cplx(0.0); };
  for (Eigen::Index k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const cplx t1 = kk * at(k);
    const cplx t2 = -p.b * (kk - 1.0) * at(k - 1);
    const cplx t3 = (kk - 2.0) * at(k - 2);
    const cplx t4 = p.alpha * at(k);
    const cplx t5 = -q1 * at(k - 1);
    const cplx t6 = 2.0 * at(k - 2);
    const cplx t7 = k == 0 ? -p.alpha * at(0) : cplx(0.0);  // the -alpha h(0) term
    const cplx res = t1 + t2 + t3 + t4 + t5 + t6 + t7;
    const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) + std::abs(t5) + std::abs(t6) + std::abs(t7);
    out.max_abs = std::max(out.max_abs, std::abs(res));
    if (scale > 0.0) out.max_rel = std::max(out.max_rel, std::abs(res) / scale);
  }
  return out;
}

WeightSequence dirichlet_binomial_weight(double alpha) { return make_weight(binomial_up_kind(alpha)); }

NormDiagnostic dirichlet_norm_diagnostic(double alpha, double a_mod, double lambda, Eigen::Index n_terms) {
  const OdeParams p = dirichlet_params(alpha, a_mod, lambda);
  NormDiagnostic out;
  out.c_modulus = std::abs(p.c);
  const double scale = std::max(out.c_modulus, 1.0);
  const CoeffSeq g = scaled_candidate(p, scale, n_terms);

  // log(|h_k|^2 omega_k) = log|g_k|^2 + 2 k log(scale) + log omega_k
  const WeightSequence w = dirichlet_binomial_weight(alpha);
  const double ls = std::log(scale);
  double log_omega = 0.0, log_sum = -std::numeric_limits<double>::infinity();
  out.log10_partial_norms.resize(n_terms);
  for (Eigen::Index k = 0; k < n_terms; ++k) {
    if (k > 0) log_omega += std::log(w.ratio(static_cast<std::size_t>(k - 1)));
    const double mag = std::norm(g(k));
    if (mag > 0.0) log_sum = log_add(log_sum, std::log(mag) + 2.0 * static_cast<double>(k) * ls + log_omega);
    out.log10_partial_norms(k) = log_sum / std::log(10.0);
  }
  if (n_terms >= 2) out.last_increment = out.log10_partial_norms(n_terms - 1) - out.log10_partial_norms(n_terms - 2);
  const Eigen::Index q = std::max<Eigen::Index>(n_terms / 4, 1);
  if (n_terms > q)
    out.growth_per_term =
        (out.log10_partial_norms(n_terms - 1) - out.log10_partial_norms(n_terms - 1 - q)) / static_cast<double>(q);
  return out;
}

}  // namespace specop
