#include "specop/tridiag_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specop {
namespace {

constexpr int kMaxSweepsPerEigenvalue = 50;
constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

EigenResult eigenvalues(const SymTridiag& t, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("eigenvalues: tol must be positive");
  const Eigen::Index n = t.dim();
  EigenResult res;
  res.values = t.diag;
  if (n == 0) {
    res.converged = true;
    return res;
  }
  const double norm = std::max(t.inf_norm(), std::numeric_limits<double>::min());

  Eigen::VectorXd& d = res.values;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e.head(n - 1) = t.offdiag;

  double worst = 0.0;
  res.converged = true;
  for (Eigen::Index l = 0; l < n; ++l) {
    int sweeps = 0;
    for (;;) {
      // Find a negligible off-diagonal entry at or after l.
      Eigen::Index m = l;
      for (; m < n - 1; ++m) {
        const double scale = std::abs(d(m)) + std::abs(d(m + 1));
        if (std::abs(e(m)) <= kEps * scale) break;
      }
      if (m < n - 1) worst = std::max(worst, std::abs(e(m)) / norm);
      if (m == l) break;
      if (sweeps++ == kMaxSweepsPerEigenvalue) {
        res.converged = false;
        break;
      }
      ++res.iterations;

      // Wilkinson shift from the leading 2x2 block.
      double g = (d(l + 1) - d(l)) / (2.0 * e(l));
      double r = std::hypot(g, 1.0);
      g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      Eigen::Index i = m;
      bool underflow = false;
      while (i-- > l) {
        double f = s * e(i);
        const double b = c * e(i);
        r = std::hypot(f, g);
        e(i + 1) = r;
        if (r == 0.0) {
          d(i + 1) -= p;
          e(m) = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d(i + 1) - p;
        r = (d(i) - g) * s + 2.0 * c * b;
        p = s * r;
        d(i + 1) = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d(l) -= p;
      e(l) = g;
      e(m) = 0.0;
    }
    if (!res.converged) break;
  }
  std::sort(d.data(), d.data() + n);
  res.achieved_tol = worst;
  if (res.converged && worst > tol) res.converged = false;
  return res;
}

namespace {

// Count of negative pivots of LDL^T(t - x I); nullopt-like flag on an exact zero pivot.
std::size_t negative_pivots(const SymTridiag& t, double x, bool& hit_zero) {
  hit_zero = false;
  std::size_t count = 0;
  double q = 1.0;
  for (Eigen::Index i = 0; i < t.dim(); ++i) {
    const double off2 = i > 0 ? t.offdiag(i - 1) * t.offdiag(i - 1) : 0.0;
    q = (t.diag(i) - x) - (i > 0 ? off2 / q : 0.0);
    if (q == 0.0) {
      hit_zero = true;
      return 0;
    }
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

std::size_t sturm_count(const SymTridiag& t, double x) {
  const double nudge = 1e-14 * std::max(t.inf_norm(), std::numeric_limits<double>::min());
  bool hit_zero = false;
  double probe = x;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const std::size_t c = negative_pivots(t, probe, hit_zero);
    if (!hit_zero) return c;
    probe -= nudge;
  }
  throw std::runtime_error("sturm_count: recurrence kept hitting zero pivots");
}

double kth_eigenvalue(const SymTridiag& t, std::size_t k, double lo, double hi, double width) {
  // Invariant: count(lo) <= k < count(hi).
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

Outliers outliers(const SymTridiag& t, std::pair<double, double> interval, double margin) {
  if (!(margin > 0.0)) throw std::invalid_argument("outliers: margin must be positive");
  Outliers out;
  const auto n = static_cast<std::size_t>(t.dim());
  if (n == 0) return out;
  auto [glo, ghi] = t.gershgorin();
  const double norm = std::max(t.inf_norm(), std::numeric_limits<double>::min());
  const double width = 1e-12 * norm;
  glo -= width;
  ghi += width;

  const double cut_lo = interval.first - margin;
  const double cut_hi = interval.second + margin;
  const std::size_t n_below = cut_lo > glo ? sturm_count(t, cut_lo) : 0;
  const std::size_t n_upto_hi = cut_hi < ghi ? sturm_count(t, cut_hi) : n;
  for (std::size_t k = 0; k < n_below; ++k) out.below.push_back(kth_eigenvalue(t, k, glo, cut_lo, width));
  for (std::size_t k = n_upto_hi; k < n; ++k) {
    // Eigenvalues exactly at cut_hi are counted as "above" by sturm_count;
    // they are excluded here to keep the cut strict.
    const double v = kth_eigenvalue(t, k, cut_hi, ghi, width);
    if (v > cut_hi) out.above.push_back(v);
  }
  return out;
}

namespace {

using Poly = std::vector<double>;  // ascending powers

double horner(const Poly& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly poly_derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(static_cast<double>(k) * p[k]);
  return d;
}

// Real roots of a polynomial known to be real-rooted.
std::vector<double> real_roots(const Poly& p) {
  const std::size_t deg = p.size() - 1;
  if (deg == 0) return {};
  if (deg == 1) return {-p[0] / p[1]};

  // Cauchy bound.
  double bound = 0.0;
  for (std::size_t k = 0; k < deg; ++k) bound = std::max(bound, std::abs(p[k] / p[deg]));
  bound += 1.0;

  std::vector<double> marks{-bound};
  for (double c : real_roots(poly_derivative(p))) marks.push_back(c);
  marks.push_back(bound);

  double scale = 0.0;
  for (double c : p) scale = std::max(scale, std::abs(c));

  std::vector<double> roots;
  std::vector<bool> used(marks.size(), false);
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    double lo = marks[i], hi = marks[i + 1];
    double flo = horner(p, lo), fhi = horner(p, hi);
    if (flo == 0.0) continue;  // handled as a critical-point root below
    if (fhi == 0.0 || (flo < 0.0) == (fhi < 0.0)) continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = horner(p, mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  // Multiple roots sit on critical points without a sign change.
  if (roots.size() < deg) {
    std::vector<std::pair<double, double>> cands;
    for (std::size_t i = 1; i + 1 < marks.size(); ++i)
      cands.emplace_back(std::abs(horner(p, marks[i])), marks[i]);
    std::sort(cands.begin(), cands.end());
    for (std::size_t i = 0; i < cands.size() && roots.size() < deg; ++i) {
      if (cands[i].first > 1e-6 * scale) break;
      roots.push_back(cands[i].second);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::vector<double> charpoly_eigs_bruteforce(const SymTridiag& t) {
  const Eigen::Index n = t.dim();
  if (n < 1 || n > 5) throw std::invalid_argument("charpoly_eigs_bruteforce: dimension must be 1..5");

  // p_k(x) = (d_k - x) p_{k-1}(x) - e_{k-1}^2 p_{k-2}(x), expanded coefficientwise.
  Poly prev2{1.0};
  Poly prev{t.diag(0), -1.0};
  for (Eigen::Index k = 1; k < n; ++k) {
    Poly next(static_cast<std::size_t>(k) + 2, 0.0);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next[i] += t.diag(k) * prev[i];
      next[i + 1] -= prev[i];
    }
    const double e2 = t.offdiag(k - 1) * t.offdiag(k - 1);
    for (std::size_t i = 0; i < prev2.size(); ++i) next[i] -= e2 * prev2[i];
    prev2 = std::move(prev);
    prev = std::move(next);
  }
  auto roots = real_roots(prev);
  if (roots.size() != static_cast<std::size_t>(n))
    throw std::runtime_error("charpoly_eigs_bruteforce: root isolation failed");
  return roots;
}

}  // namespace specop
