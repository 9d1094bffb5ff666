#pragma once

// Truncated power series. A series is a dense Eigen column vector whose
// entry n is the Maclaurin coefficient of z^n; index -1 reads as zero.

#include <complex>
#include <stdexcept>

#include <Eigen/Core>

#include "specop/weights.hpp"

namespace specop {

template <typename Scalar>
using Series = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using CoeffSeq = Series<std::complex<double>>;

/// Coefficients of (1 - s z)^e, n_terms of them.
template <typename Scalar>
Series<Scalar> binomial_series(const Scalar& s, const Scalar& e, Eigen::Index n_terms) {
  if (n_terms < 1) throw std::invalid_argument("binomial_series needs n_terms >= 1");
  Series<Scalar> out(n_terms);
  out(0) = Scalar(1);
  for (Eigen::Index n = 0; n + 1 < n_terms; ++n) {
    const Scalar k(static_cast<double>(n));
    out(n + 1) = out(n) * (-s) * (e - k) / Scalar(static_cast<double>(n + 1));
  }
  return out;
}

inline CoeffSeq binomial_series(std::complex<double> s, std::complex<double> e, Eigen::Index n_terms) {
  return binomial_series<std::complex<double>>(s, e, n_terms);
}

/// Cauchy product truncated to n_terms.
template <typename DerivedU, typename DerivedV>
Series<typename DerivedU::Scalar> product(const Eigen::MatrixBase<DerivedU>& u,
                                          const Eigen::MatrixBase<DerivedV>& v,
                                          Eigen::Index n_terms) {
  using Scalar = typename DerivedU::Scalar;
  Series<Scalar> out = Series<Scalar>::Zero(n_terms);
  const Eigen::Index nu = std::min(u.size(), n_terms);
  for (Eigen::Index i = 0; i < nu; ++i) {
    if (u(i) == Scalar(0)) continue;
    const Eigen::Index nv = std::min(v.size(), n_terms - i);
    out.segment(i, nv) += u(i) * v.head(nv);
  }
  return out;
}

/// Coefficients of exp(u(z)). The constant term of u must be zero.
///
/// Uses w' = u' w, i.e. n w_n = sum_{k=1}^{n} k u_k w_{n-k}.
template <typename Derived>
Series<typename Derived::Scalar> exponential(const Eigen::MatrixBase<Derived>& u, Eigen::Index n_terms) {
  using Scalar = typename Derived::Scalar;
  if (u.size() > 0 && u(0) != Scalar(0))
    throw std::invalid_argument("exponential: series must have zero constant term");
  Series<Scalar> w = Series<Scalar>::Zero(n_terms);
  if (n_terms == 0) return w;
  w(0) = Scalar(1);
  for (Eigen::Index n = 1; n < n_terms; ++n) {
    Scalar acc(0);
    const Eigen::Index kmax = std::min(n, u.size() - 1);
    for (Eigen::Index k = 1; k <= kmax; ++k) acc += Scalar(static_cast<double>(k)) * u(k) * w(n - k);
    w(n) = acc / Scalar(static_cast<double>(n));
  }
  return w;
}

/// Horner evaluation of the truncated polynomial.
template <typename Derived, typename Point>
auto eval(const Eigen::MatrixBase<Derived>& u, const Point& z) {
  using Scalar = decltype(typename Derived::Scalar() * z);
  Scalar acc(0);
  for (Eigen::Index n = u.size(); n-- > 0;) acc = acc * z + u(n);
  return acc;
}

/// Formal derivative; the result has one fewer coefficient (at least one).
template <typename Derived>
Series<typename Derived::Scalar> derivative(const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  if (u.size() <= 1) return Series<Scalar>::Zero(1);
  Series<Scalar> d(u.size() - 1);
  for (Eigen::Index n = 1; n < u.size(); ++n) d(n - 1) = Scalar(static_cast<double>(n)) * u(n);
  return d;
}

/// Running partial sums S_N = sum_{n <= N} |u_n|^2 omega_n.
template <typename Derived>
Eigen::VectorXd weighted_partial_norms(const Eigen::MatrixBase<Derived>& u, const WeightSequence& w) {
  const Eigen::VectorXd omega = w.omegas(static_cast<std::size_t>(u.size()));
  Eigen::VectorXd out(u.size());
  double acc = 0.0;
  for (Eigen::Index n = 0; n < u.size(); ++n) {
    acc += std::norm(u(n)) * omega(n);
    out(n) = acc;
  }
  return out;
}

/// Weighted norm squared sum |u_n|^2 omega_n.
template <typename Derived>
double weighted_norm2(const Eigen::MatrixBase<Derived>& u, const WeightSequence& w) {
  if (u.size() == 0) return 0.0;
  return weighted_partial_norms(u, w)(u.size() - 1);
}

/// Weighted inner product sum u_n conj(v_n) omega_n over the common length.
template <typename DerivedU, typename DerivedV>
std::complex<double> weighted_inner(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v,
                                    const WeightSequence& w) {
  const Eigen::Index n = std::min(u.size(), v.size());
  const Eigen::VectorXd omega = w.omegas(static_cast<std::size_t>(n));
  std::complex<double> acc = 0.0;
  for (Eigen::Index k = 0; k < n; ++k)
    acc += std::complex<double>(u(k)) * std::conj(std::complex<double>(v(k))) * omega(k);
  return acc;
}

}  // namespace specop
