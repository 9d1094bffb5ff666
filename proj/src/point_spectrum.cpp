#include "specop/point_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace specop {
namespace {

constexpr double kDegenerateTol = 1e-12;

bool is_degenerate(double b) { return std::abs(b - 2.0) < kDegenerateTol || std::abs(b + 2.0) < kDegenerateTol; }

PointEigen make_entry(double alpha, double a_mod, int j, Branch branch, bool valid) {
  PointEigen e;
  e.j = j;
  e.branch = branch;
  e.rho = rho(alpha, a_mod, j);
  e.pole = branch_pole(alpha, a_mod, j, branch);
  e.lambda = branch_lambda(alpha, a_mod, j, branch);
  e.degenerate = is_degenerate(b_parameter(a_mod, e.lambda));
  e.valid = valid && !e.degenerate;
  return e;
}

}  // namespace

std::string_view to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

double rho(double alpha, double a_mod, int j) {
  const double k = j + 1.0;
  return std::sqrt(alpha * alpha + 4.0 * a_mod * a_mod * k * (k - alpha));
}

double branch_pole(double alpha, double a_mod, int j, Branch branch) {
  const double k = j + 1.0;
  const double r = rho(alpha, a_mod, j);
  // (rho + alpha)(rho - alpha) = 4 a^2 k (k - alpha): divide instead of subtracting.
  const double sum_form = branch == Branch::minus ? alpha : -alpha;
  if (sum_form >= 0.0) return (r + sum_form) / (2.0 * a_mod * k);
  return 2.0 * a_mod * (k - alpha) / (r - sum_form);
}

long double lambda_from_pole(double a_mod, double pole, Branch branch) {
  // b = s + 1/s on the minus branch and -(s + 1/s) on the plus branch.
  const long double a = a_mod, s = pole;
  return branch == Branch::minus ? (a - s) * (a - 1.0L / s) : (a + s) * (a + 1.0L / s);
}

double branch_lambda(double alpha, double a_mod, int j, Branch branch) {
  return static_cast<double>(lambda_from_pole(a_mod, branch_pole(alpha, a_mod, j, branch), branch));
}

double b_parameter(double a_mod, double lambda) { return (a_mod * a_mod + 1.0 - lambda) / a_mod; }

std::complex<double> c_root(double b) {
  const double disc = b * b - 4.0;
  if (disc >= 0.0) {
    // Larger-modulus root without cancellation.
    return 0.5 * (b + std::copysign(std::sqrt(disc), b == 0.0 ? 1.0 : b));
  }
  return {0.5 * b, 0.5 * std::sqrt(-disc)};
}

std::vector<PointEigen> point_spectrum(double alpha, std::complex<double> a, int jmax) {
  if (!(alpha < 1.0)) throw std::invalid_argument("point_spectrum: alpha must be < 1");
  const double a_mod = std::abs(a);
  if (a_mod == 0.0) throw std::invalid_argument("point_spectrum: a must be nonzero");
  std::vector<PointEigen> out;
  if (alpha == 0.0 || jmax < 0) return out;  // Hardy space: spectrum is purely essential
  for (int j = 0; j <= jmax; ++j) {
    if (alpha < 0.0) {
      out.push_back(make_entry(alpha, a_mod, j, Branch::minus, a_mod < 1.0));
    } else {
      out.push_back(make_entry(alpha, a_mod, j, Branch::plus, true));
      out.push_back(make_entry(alpha, a_mod, j, Branch::minus, a_mod > 1.0));
    }
  }
  return out;
}

std::vector<PointEigen> valid_point_spectrum(double alpha, std::complex<double> a, int jmax) {
  auto all = point_spectrum(alpha, a, jmax);
  std::erase_if(all, [](const PointEigen& e) { return !e.valid; });
  return all;
}

CoeffSeq eigenfunction_closed(double alpha, std::complex<double> a, const PointEigen& entry, Eigen::Index n_terms) {
  if (!entry.valid) throw std::invalid_argument("eigenfunction_closed: entry is not a valid eigenvalue");
  // Extended precision: the coefficients oscillate through zero on the plus
  // branch and the short Cauchy product cancels there.
  using R = long double;
  const R s = entry.pole;
  const R sign = entry.branch == Branch::minus ? 1.0L : -1.0L;
  const R power = entry.j + 2.0L - static_cast<R>(alpha);
  // (z -+ s)^j / (-+s)^j = (1 - sign z/s)^j ; (1 -+ s z)^{-power} = (1 - sign s z)^{-power}
  const Series<R> numer = binomial_series<R>(sign / s, R(entry.j), n_terms);
  const Series<R> denom = binomial_series<R>(sign * s, -power, n_terms);
  CoeffSeq h = product(numer, denom, n_terms).cast<double>().cast<std::complex<double>>();

  const double theta = gauge_reduce(a).phase;
  if (theta != 0.0)
    for (Eigen::Index n = 0; n < n_terms; ++n) h(n) *= std::polar(1.0, -static_cast<double>(n) * theta);
  return h;
}

CoeffSeq eigenfunction_recurrence(const WeightSequence& w, double a_mod, double lambda, Eigen::Index n_terms) {
  return eigenfunction_recurrence_t<double>(w, a_mod, lambda, n_terms).cast<std::complex<double>>();
}

MinimalSolution eigenfunction_minimal(const WeightSequence& w, double a_mod, long double lambda, Eigen::Index n_terms) {
  if (!(a_mod > 0.0)) throw std::invalid_argument("eigenfunction_minimal: a_mod must be > 0");
  if (n_terms < 2) throw std::invalid_argument("eigenfunction_minimal: need at least 2 terms");

  // Asymptotic growth ratio |c| of the dominant solution, from r_n -> 1.
  const double b = b_parameter(a_mod, static_cast<double>(lambda));
  const double c_mod = std::abs(c_root(b));
  const double log_c = std::log(std::max(c_mod, 1.0 + 1e-6));
  constexpr Eigen::Index kMaxStart = 2'000'000;

  auto run = [&](Eigen::Index start) {
    // h_{n-1} = [(a^2 + r_n - lambda) h_n - a r_n h_{n+1}] / a, from h_{start+1} = 0, h_start = 1.
    using R = long double;
    const R a = a_mod, lam = lambda;
    Series<R> kept = Series<R>::Zero(n_terms);
    R next = 0.0L, cur = 1.0L;
    for (Eigen::Index n = start; n >= 1; --n) {
      if (n < n_terms) kept(n) = cur;
      const R r = w.ratio_extended(static_cast<std::size_t>(n));
      const R prev = ((a * a + r - lam) * cur - a * r * next) / a;
      next = cur;
      cur = prev;
      if (std::abs(cur) > 1e150L) {
        cur *= 1e-150L;
        next *= 1e-150L;
        kept *= 1e-150L;
      }
    }
    kept(0) = cur;
    return kept;
  };

  MinimalSolution out;
  Eigen::Index start = n_terms + static_cast<Eigen::Index>(std::ceil(30.0 / log_c)) + 16;
  start = std::min(start, kMaxStart);
  Series<long double> h = run(start);
  for (int round = 0; round < 12; ++round) {
    const Eigen::Index bigger = std::min<Eigen::Index>(2 * start, kMaxStart);
    if (bigger == start) break;
    Series<long double> g = run(bigger);
    double change = 0.0;
    if (h(0) != 0.0L && g(0) != 0.0L) {
      const Series<long double> hn = h / h(0), gn = g / g(0);
      for (Eigen::Index n = 0; n < n_terms; ++n)
        change = std::max(change, static_cast<double>(std::abs(hn(n) - gn(n)) /
                                                      std::max(std::abs(gn(n)), std::numeric_limits<long double>::min())));
    } else {
      change = std::numeric_limits<double>::infinity();
    }
    h = std::move(g);
    start = bigger;
    if (change < 1e-14) {
      out.settled = true;
      break;
    }
  }
  if (h(0) == 0.0L) throw std::runtime_error("eigenfunction_minimal: minimal solution vanishes at 0");
  h /= h(0);
  const long double r0 = w.ratio_extended(0);
  out.row0_residual = static_cast<double>(
      std::abs((static_cast<long double>(a_mod) * a_mod + r0 - lambda) * h(0) - static_cast<long double>(a_mod) * r0 * h(1)));
  out.coeffs = h.cast<double>().cast<std::complex<double>>();
  out.start_index = start;
  return out;
}

BoundsResult eigenvalue_bounds(const WeightSequence& w, double a_mod) {
  if (!(a_mod > 0.0)) throw std::invalid_argument("eigenvalue_bounds: a_mod must be > 0");
  const ValidityReport rep = validity_report(w, 1000);
  const double below = (a_mod - 1.0) * (a_mod - 1.0);
  BoundsResult out;
  switch (rep.monotonicity) {
    case Monotonicity::non_decreasing:
      out.case_tag = BoundsCase::non_decreasing;
      out.lo = below - rep.c0 * a_mod;
      out.hi = (a_mod + 1.0) * (a_mod + 1.0) + (rep.c0 - 1.0) * a_mod;
      break;
    case Monotonicity::constant:
    case Monotonicity::non_increasing:
      out.case_tag = BoundsCase::non_increasing;
      out.lo = below - (rep.c1 - 1.0);
      out.hi = below;
      out.hi_open = true;
      break;
    case Monotonicity::none:
      throw std::invalid_argument("eigenvalue_bounds: weight is not monotone");
  }
  return out;
}

Case3Candidate case3_candidate(double alpha, double a_mod, int sign, Eigen::Index n_terms) {
  if (!(alpha < 0.0)) throw std::invalid_argument("case3_candidate: alpha must be < 0");
  if (!(a_mod > 0.0)) throw std::invalid_argument("case3_candidate: a_mod must be > 0");
  if (sign != 1 && sign != -1) throw std::invalid_argument("case3_candidate: sign must be +1 or -1");
  using C = std::complex<double>;
  const double s = static_cast<double>(sign);
  // u(z) = -alpha (1/a -+ 1) / (z -+ 1) = +-alpha (1/a -+ 1) sum_n (+-z)^n
  const double amp = s * alpha * (1.0 / a_mod - s);
  CoeffSeq u(n_terms);
  double pw = 1.0;
  for (Eigen::Index n = 0; n < n_terms; ++n) {
    u(n) = amp * pw;
    pw *= s;
  }
  Case3Candidate out;
  out.unnormalized_h0 = std::exp(u(0).real());
  u(0) = 0.0;
  out.coeffs = product(binomial_series(C(s), C(alpha - 2.0), n_terms), exponential(u, n_terms), n_terms);
  return out;
}

std::vector<EigenMatch> match_eigenvalues(const std::vector<PointEigen>& predicted,
                                          const std::vector<double>& section_values) {
  std::vector<std::tuple<double, int, std::size_t, std::size_t>> pairs;
  for (std::size_t p = 0; p < predicted.size(); ++p)
    for (std::size_t s = 0; s < section_values.size(); ++s)
      pairs.emplace_back(std::abs(predicted[p].lambda - section_values[s]), predicted[p].j, p, s);
  std::sort(pairs.begin(), pairs.end());

  std::vector<bool> used_p(predicted.size(), false), used_s(section_values.size(), false);
  std::vector<EigenMatch> out;
  for (const auto& [delta, j, p, s] : pairs) {
    if (used_p[p] || used_s[s]) continue;
    used_p[p] = used_s[s] = true;
    out.push_back({predicted[p], section_values[s], delta});
  }
  std::sort(out.begin(), out.end(), [](const EigenMatch& x, const EigenMatch& y) {
    return std::tie(x.predicted.j, x.predicted.branch) < std::tie(y.predicted.j, y.predicted.branch);
  });
  return out;
}

}  // namespace specop
