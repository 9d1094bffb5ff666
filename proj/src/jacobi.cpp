#include "specop/jacobi.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specop {

SymTridiag::SymTridiag(Eigen::VectorXd d, Eigen::VectorXd e) : diag(std::move(d)), offdiag(std::move(e)) {
  const Eigen::Index want = diag.size() > 0 ? diag.size() - 1 : 0;
  if (offdiag.size() != want) throw std::invalid_argument("SymTridiag: offdiag must have dim-1 entries");
}

double SymTridiag::inf_norm() const {
  double best = 0.0;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    double row = std::abs(diag(i));
    if (i > 0) row += std::abs(offdiag(i - 1));
    if (i + 1 < dim()) row += std::abs(offdiag(i));
    best = std::max(best, row);
  }
  return best;
}

std::pair<double, double> SymTridiag::gershgorin() const {
  double lo = 0.0, hi = 0.0;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(offdiag(i - 1));
    if (i + 1 < dim()) radius += std::abs(offdiag(i));
    if (i == 0 || diag(i) - radius < lo) lo = diag(i) - radius;
    if (i == 0 || diag(i) + radius > hi) hi = diag(i) + radius;
  }
  return {lo, hi};
}

namespace {
template <typename Vec>
Vec tridiag_apply(const SymTridiag& t, const Vec& x) {
  if (x.size() != t.dim()) throw std::invalid_argument("SymTridiag::apply: size mismatch");
  const Eigen::Index n = t.dim();
  Vec y = t.diag.cwiseProduct(x).template cast<typename Vec::Scalar>();
  if (n > 1) {
    y.head(n - 1) += t.offdiag.cwiseProduct(x.tail(n - 1));
    y.tail(n - 1) += t.offdiag.cwiseProduct(x.head(n - 1));
  }
  return y;
}
}  // namespace

Eigen::VectorXd SymTridiag::apply(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return tridiag_apply(*this, Eigen::VectorXd(x));
}

Eigen::VectorXcd SymTridiag::apply(const Eigen::Ref<const Eigen::VectorXcd>& x) const {
  if (x.size() != dim()) throw std::invalid_argument("SymTridiag::apply: size mismatch");
  const Eigen::Index n = dim();
  Eigen::VectorXcd y = x.cwiseProduct(diag.cast<std::complex<double>>());
  if (n > 1) {
    y.head(n - 1) += x.tail(n - 1).cwiseProduct(offdiag.cast<std::complex<double>>());
    y.tail(n - 1) += x.head(n - 1).cwiseProduct(offdiag.cast<std::complex<double>>());
  }
  return y;
}

Eigen::MatrixXd SymTridiag::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
  m.diagonal() = diag;
  if (dim() > 1) {
    m.diagonal(1) = offdiag;
    m.diagonal(-1) = offdiag;
  }
  return m;
}

SymTridiag SymTridiag::leading(Eigen::Index k) const {
  if (k < 1 || k > dim()) throw std::invalid_argument("SymTridiag::leading: bad size");
  return SymTridiag(diag.head(k), offdiag.head(k - 1));
}

GaugeResult gauge_reduce(std::complex<double> a) {
  double phase = std::arg(a);
  if (phase < 0.0) phase += 2.0 * std::numbers::pi;
  if (phase >= 2.0 * std::numbers::pi) phase = 0.0;
  return {std::abs(a), phase};
}

CoeffSeq apply_Va(const WeightSequence& w, std::complex<double> a, const CoeffSeq& h) {
  const Eigen::Index n = h.size();
  const Eigen::VectorXd r = w.ratios(static_cast<std::size_t>(n));
  const double a2 = std::norm(a);
  CoeffSeq out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    std::complex<double> v = (a2 + r(k)) * h(k);
    if (k + 1 < n) v -= a * h(k + 1) * r(k);
    if (k > 0) v -= std::conj(a) * h(k - 1);
    out(k) = v;
  }
  return out;
}

CoeffSeq apply_poly_V(const WeightSequence& w, const CoeffSeq& f, const CoeffSeq& h) {
  const Eigen::Index n = h.size();
  const Eigen::Index deg = std::max<Eigen::Index>(f.size() - 1, 0);
  const Eigen::Index len = n + deg;
  const CoeffSeq g = product(h, f, len);
  const Eigen::VectorXd r = w.ratios(static_cast<std::size_t>(len));

  // (M*_f g)_m = sum_k conj(f_k) g_{m+k} omega_{m+k}/omega_m
  CoeffSeq out = CoeffSeq::Zero(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    std::complex<double> acc = 0.0;
    double rel = 1.0;  // omega_{m+k}/omega_m
    for (Eigen::Index k = 0; k < f.size() && m + k < len; ++k) {
      acc += std::conj(f(k)) * g(m + k) * rel;
      rel *= r(m + k);
    }
    out(m) = acc;
  }
  return out;
}

bool inner_check(const WeightSequence& w, const CoeffSeq& f, double tol) {
  // M*_f M_f 1 = M*_f f vanishes past index deg f, so deg f + 1 terms are exact.
  const Eigen::Index len = std::max<Eigen::Index>(f.size(), 1);
  CoeffSeq one = CoeffSeq::Zero(len);
  one(0) = 1.0;
  const CoeffSeq v = apply_poly_V(w, f, one);
  return (v - one).cwiseAbs().maxCoeff() <= tol;
}

SymTridiag jacobi_truncation(const WeightSequence& w, double a, Eigen::Index n) {
  if (a < 0.0) throw std::invalid_argument("jacobi_truncation: a must be >= 0 (apply gauge_reduce first)");
  if (n < 1) throw std::invalid_argument("jacobi_truncation: dimension must be >= 1");
  const Eigen::VectorXd r = w.ratios(static_cast<std::size_t>(n));
  Eigen::VectorXd d = (a * a + r.array()).matrix();
  Eigen::VectorXd e = (-a * r.head(n - 1).array().sqrt()).matrix();
  return SymTridiag(std::move(d), std::move(e));
}

std::pair<double, double> essential_interval(std::complex<double> a) {
  const double m = std::abs(a);
  return {(1.0 - m) * (1.0 - m), (1.0 + m) * (1.0 + m)};
}

HsSums hs_perturbation_sums(const WeightSequence& w, double a, std::size_t n_terms) {
  if (n_terms == 0) throw std::invalid_argument("hs_perturbation_sums needs n_terms >= 1");
  HsSums s;
  for (std::size_t n = 0; n < n_terms; ++n) {
    const double r = w.ratio(n);
    const double q = 1.0 - std::sqrt(r);
    s.sqrt_gap += q * q;
    s.ratio_gap += (1.0 - r) * (1.0 - r);
  }
  s.total = 2.0 * a * a * s.sqrt_gap + s.ratio_gap;
  return s;
}

CoeffSeq to_orthonormal(const WeightSequence& w, const CoeffSeq& h) {
  const Eigen::VectorXd om = w.omegas(static_cast<std::size_t>(h.size()));
  return h.cwiseProduct(om.cwiseSqrt().cast<std::complex<double>>());
}

CoeffSeq from_orthonormal(const WeightSequence& w, const CoeffSeq& c) {
  const Eigen::VectorXd om = w.omegas(static_cast<std::size_t>(c.size()));
  return c.cwiseQuotient(om.cwiseSqrt().cast<std::complex<double>>());
}

}  // namespace specop
