#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>

#include <Eigen/Core>

namespace specop {

/// omega_n = binom(n - alpha, n)^{-1}, i.e. r_n = (n+1)/(n+1-alpha). Requires alpha < 1.
/// alpha = -1 is the Bergman space, alpha = 0 the Hardy space.
struct BergmanType {
  double alpha;
};

/// omega_n = (n+1)^alpha.
struct DirichletPower {
  double alpha;
};

/// Arbitrary weight given by its consecutive ratios r_n = omega_{n+1}/omega_n.
struct CustomRatio {
  std::function<double(std::size_t)> ratio;
  std::string label = "custom";
};

using WeightKind = std::variant<BergmanType, DirichletPower, CustomRatio>;

/// Custom weight omega_n = binom(n + alpha, n), r_n = (n+1+alpha)/(n+1).
/// alpha = 1 gives the classical Dirichlet weight omega_n = n+1.
WeightKind binomial_up_kind(double alpha);

/// Positive weight sequence with omega_0 = 1. Immutable.
///
/// Only ratios are evaluated in closed form; omega_n itself is always the
/// running product of ratios, so nothing overflows the way the binomials would.
class WeightSequence {
 public:
  explicit WeightSequence(WeightKind kind);

  const WeightKind& kind() const { return kind_; }
  std::string describe() const;

  /// r_n = omega_{n+1} / omega_n.
  double ratio(std::size_t n) const;

  /// Same ratio carried in long double for closed-form kinds; custom ratios
  /// are only as accurate as their generator.
  long double ratio_extended(std::size_t n) const;

  /// omega_n. Linear in n; use omegas() when many values are needed.
  double omega(std::size_t n) const;

  /// omega_0 .. omega_{count-1}.
  Eigen::VectorXd omegas(std::size_t count) const;

  /// r_0 .. r_{count-1}.
  Eigen::VectorXd ratios(std::size_t count) const;

  /// True when the closed form of the ratio is known, so tail bounds and
  /// C0/C1 can be certified rather than sampled.
  bool has_closed_form() const { return !std::holds_alternative<CustomRatio>(kind_); }

 private:
  WeightKind kind_;
};

/// Throws std::invalid_argument for BergmanType with alpha >= 1.
WeightSequence make_weight(WeightKind kind);

inline double ratio(const WeightSequence& w, std::size_t n) { return w.ratio(n); }

enum class Monotonicity { constant, non_increasing, non_decreasing, none };

/// Certificate for the standing assumptions on a weight:
/// monotone, ratios tending to 1, and sum (1 - r_n)^2 finite.
struct ValidityReport {
  double partial_sum = 0.0;    ///< sum_{n < n_terms} (1 - r_n)^2
  double tail_bound = 0.0;     ///< upper bound on the remaining tail; +inf when unknown
  double tail_estimate = 0.0;  ///< best estimate of the tail (midpoint integral rule)
  bool is_valid = false;
  bool certified = false;      ///< false: "checked up to n_terms" only
  double c0 = 1.0;             ///< sup r_n
  double c1 = 1.0;             ///< sup 1/r_n
  bool c_exact = false;        ///< false: c0/c1 are maxima over the checked range (lower bounds)
  double ratio_limit_gap = 0.0;  ///< |1 - r_{n_terms-1}|
  Monotonicity monotonicity = Monotonicity::none;
  std::size_t n_terms = 0;
  std::string reason;

  double limit_estimate() const { return partial_sum + tail_estimate; }
};

ValidityReport validity_report(const WeightSequence& w, std::size_t n_terms);

/// Truncated kappa_z(z) = sum_{j < n_terms} r^{2j} / omega_j with |z| = r.
/// Throws std::invalid_argument unless 0 <= r < 1.
double kernel_diag(const WeightSequence& w, double r, std::size_t n_terms);

}  // namespace specop
