#pragma once

// V_a = M*_{a-z} M_{a-z} on a weighted Hardy space: its action on
// coefficient sequences, general M*_f M_f for polynomial f, and the real
// symmetric tridiagonal finite sections in the orthonormal basis z^n/sqrt(omega_n).

#include <complex>
#include <utility>

#include <Eigen/Core>

#include "specop/series.hpp"
#include "specop/weights.hpp"

namespace specop {

/// Real symmetric tridiagonal matrix stored as its two diagonals.
struct SymTridiag {
  Eigen::VectorXd diag;     ///< d_0 .. d_{N-1}
  Eigen::VectorXd offdiag;  ///< e_0 .. e_{N-2}

  SymTridiag() = default;
  SymTridiag(Eigen::VectorXd d, Eigen::VectorXd e);

  Eigen::Index dim() const { return diag.size(); }

  /// Max absolute row sum.
  double inf_norm() const;

  /// Gershgorin enclosure [lo, hi] of the spectrum.
  std::pair<double, double> gershgorin() const;

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXcd apply(const Eigen::Ref<const Eigen::VectorXcd>& x) const;

  Eigen::MatrixXd dense() const;

  /// Leading principal k x k block.
  SymTridiag leading(Eigen::Index k) const;
};

struct GaugeResult {
  double modulus = 0.0;
  double phase = 0.0;  ///< in [0, 2 pi)

  std::complex<double> reconstruct() const { return std::polar(modulus, phase); }
};

/// Polar split of a; spectra of V_a depend on |a| only.
GaugeResult gauge_reduce(std::complex<double> a);

/// Coefficients of V_a h, same length as h. The coupling to h_N at the last
/// index is dropped (h_N read as 0).
CoeffSeq apply_Va(const WeightSequence& w, std::complex<double> a, const CoeffSeq& h);

/// Coefficients of M*_f M_f h for polynomial f, same length as h. Products
/// are carried to length N + deg f before the adjoint is applied.
CoeffSeq apply_poly_V(const WeightSequence& w, const CoeffSeq& f, const CoeffSeq& h);

/// Whether M*_f M_f 1 = 1 to within tol in the max norm.
bool inner_check(const WeightSequence& w, const CoeffSeq& f, double tol = 1e-10);

/// N x N section of V_a for real a >= 0:  d_k = a^2 + r_k,  e_k = -a sqrt(r_k).
/// Throws std::invalid_argument for negative a; gauge complex a first.
SymTridiag jacobi_truncation(const WeightSequence& w, double a, Eigen::Index n);

/// [(1-|a|)^2, (1+|a|)^2].
std::pair<double, double> essential_interval(std::complex<double> a);

/// Hilbert-Schmidt certificate pieces for the perturbation of (a^2+1)I - a J_0.
struct HsSums {
  double sqrt_gap = 0.0;   ///< sum (1 - sqrt(r_n))^2
  double ratio_gap = 0.0;  ///< sum (1 - r_n)^2
  double total = 0.0;      ///< 2 a^2 sqrt_gap + ratio_gap
};

HsSums hs_perturbation_sums(const WeightSequence& w, double a, std::size_t n_terms);

/// Map between monomial coefficients h_n and orthonormal coordinates h_n sqrt(omega_n).
CoeffSeq to_orthonormal(const WeightSequence& w, const CoeffSeq& h);
CoeffSeq from_orthonormal(const WeightSequence& w, const CoeffSeq& c);

}  // namespace specop
