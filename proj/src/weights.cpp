#include "specop/weights.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace specop {
namespace {

// Past this index omega_n is accumulated in log space.
constexpr std::size_t kLogSpaceThreshold = 100000;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

WeightKind binomial_up_kind(double alpha) {
  std::ostringstream label;
  label.precision(17);
  label << "binomial-up:" << alpha;
  return CustomRatio{[alpha](std::size_t n) {
                       const double m = static_cast<double>(n) + 1.0;
                       return (m + alpha) / m;
                     },
                     label.str()};
}

WeightSequence::WeightSequence(WeightKind kind) : kind_(std::move(kind)) {
  if (const auto* b = std::get_if<BergmanType>(&kind_); b && !(b->alpha < 1.0))
    throw std::invalid_argument("bergman weight requires alpha < 1");
  if (const auto* c = std::get_if<CustomRatio>(&kind_); c && !c->ratio)
    throw std::invalid_argument("custom weight needs a ratio generator");
}

WeightSequence make_weight(WeightKind kind) { return WeightSequence(std::move(kind)); }

std::string WeightSequence::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{[&](const BergmanType& b) { os << "bergman:" << b.alpha; },
                        [&](const DirichletPower& d) { os << "dirichlet-pow:" << d.alpha; },
                        [&](const CustomRatio& c) { os << c.label; }},
             kind_);
  return os.str();
}

double WeightSequence::ratio(std::size_t n) const { return static_cast<double>(ratio_extended(n)); }

long double WeightSequence::ratio_extended(std::size_t n) const {
  const long double m = static_cast<long double>(n) + 1.0L;
  return std::visit(Overloaded{[&](const BergmanType& b) { return m / (m - b.alpha); },
                               [&](const DirichletPower& d) {
                                 // ((n+2)/(n+1))^alpha without forming the quotient twice
                                 return std::exp(d.alpha * std::log1p(1.0L / m));
                               },
                               [&](const CustomRatio& c) { return static_cast<long double>(c.ratio(n)); }},
                    kind_);
}

double WeightSequence::omega(std::size_t n) const {
  if (n <= kLogSpaceThreshold) {
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) w *= ratio(i);
    return w;
  }
  return omegas(n + 1)(static_cast<Eigen::Index>(n));
}

Eigen::VectorXd WeightSequence::omegas(std::size_t count) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(count));
  if (count == 0) return out;
  out(0) = 1.0;
  const std::size_t direct = std::min(count, kLogSpaceThreshold + 1);
  for (std::size_t n = 1; n < direct; ++n)
    out(static_cast<Eigen::Index>(n)) = out(static_cast<Eigen::Index>(n - 1)) * ratio(n - 1);
  if (direct == count) return out;

  // Kahan-compensated sum of log ratios.
  double log_w = std::log(out(static_cast<Eigen::Index>(direct - 1)));
  double carry = 0.0;
  for (std::size_t n = direct; n < count; ++n) {
    const double y = std::log(ratio(n - 1)) - carry;
    const double t = log_w + y;
    carry = (t - log_w) - y;
    log_w = t;
    out(static_cast<Eigen::Index>(n)) = std::exp(log_w);
  }
  return out;
}

Eigen::VectorXd WeightSequence::ratios(std::size_t count) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(count));
  for (std::size_t n = 0; n < count; ++n) out(static_cast<Eigen::Index>(n)) = ratio(n);
  return out;
}

ValidityReport validity_report(const WeightSequence& w, std::size_t n_terms) {
  if (n_terms == 0) throw std::invalid_argument("validity_report needs n_terms >= 1");

  ValidityReport rep;
  rep.n_terms = n_terms;

  bool any_below = false, any_above = false, finite = true;
  double max_r = 0.0, max_inv = 0.0;
  for (std::size_t n = 0; n < n_terms; ++n) {
    const double r = w.ratio(n);
    if (!(r > 0.0) || !std::isfinite(r)) {
      finite = false;
      break;
    }
    rep.partial_sum += (1.0 - r) * (1.0 - r);
    any_below |= r < 1.0;
    any_above |= r > 1.0;
    max_r = std::max(max_r, r);
    max_inv = std::max(max_inv, 1.0 / r);
  }
  if (!finite) {
    rep.reason = "ratio not positive and finite on the checked range";
    rep.tail_bound = rep.tail_estimate = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.ratio_limit_gap = std::abs(1.0 - w.ratio(n_terms - 1));

  if (any_below && any_above) {
    rep.monotonicity = Monotonicity::none;
    rep.reason = "weight is not monotone on the checked range";
    rep.tail_bound = rep.tail_estimate = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.monotonicity = any_below   ? Monotonicity::non_increasing
                     : any_above ? Monotonicity::non_decreasing
                                 : Monotonicity::constant;

  const double big_n = static_cast<double>(n_terms);
  if (const auto* b = std::get_if<BergmanType>(&w.kind())) {
    // (1 - r_n)^2 = alpha^2 / (n + 1 - alpha)^2, decreasing in n.
    const double a2 = b->alpha * b->alpha;
    rep.tail_bound = a2 / (big_n - b->alpha);
    rep.tail_estimate = a2 / (big_n + 0.5 - b->alpha);
    // Ratios are monotone in n and tend to 1, so the suprema sit at n = 0.
    rep.c0 = std::max(1.0, w.ratio(0));
    rep.c1 = std::max(1.0, 1.0 / w.ratio(0));
    rep.c_exact = true;
    rep.certified = true;
  } else if (const auto* d = std::get_if<DirichletPower>(&w.kind())) {
    // |1 - (1+x)^alpha| <= |alpha| x max(1, (1+x)^(alpha-1)), x = 1/(n+1) <= 1/(N+1).
    const double a2 = d->alpha * d->alpha;
    const double growth = d->alpha > 1.0 ? std::pow(1.0 + 1.0 / (big_n + 1.0), d->alpha - 1.0) : 1.0;
    rep.tail_bound = a2 * growth * growth / big_n;
    rep.tail_estimate = a2 / (big_n + 0.5);
    rep.c0 = std::max(1.0, w.ratio(0));
    rep.c1 = std::max(1.0, 1.0 / w.ratio(0));
    rep.c_exact = true;
    rep.certified = true;
  } else {
    rep.tail_bound = std::numeric_limits<double>::infinity();
    rep.tail_estimate = 0.0;
    rep.c0 = std::max(1.0, max_r);
    rep.c1 = std::max(1.0, max_inv);
    rep.c_exact = false;
    rep.certified = false;
    std::ostringstream os;
    os << "checked up to N=" << n_terms << "; c0/c1 are lower bounds";
    rep.reason = os.str();
  }
  rep.is_valid = true;
  return rep;
}

double kernel_diag(const WeightSequence& w, double r, std::size_t n_terms) {
  if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("kernel_diag requires 0 <= r < 1");
  const double r2 = r * r;
  double sum = 0.0, power = 1.0, inv_omega = 1.0;
  for (std::size_t j = 0; j < n_terms; ++j) {
    sum += power * inv_omega;
    power *= r2;
    inv_omega /= w.ratio(j);
  }
  return sum;
}

}  // namespace specop
