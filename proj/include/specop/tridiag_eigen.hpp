#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "specop/jacobi.hpp"

namespace specop {

struct EigenResult {
  Eigen::VectorXd values;     ///< ascending; partial (unconverged diagonal) when !converged
  double achieved_tol = 0.0;  ///< largest deflated off-diagonal relative to the matrix inf-norm
  std::size_t iterations = 0;
  bool converged = false;
};

/// All eigenvalues of t by implicit-shift QL with Wilkinson shifts.
/// Absolute accuracy tol * ||t||_inf; at most 50 QL sweeps per eigenvalue.
EigenResult eigenvalues(const SymTridiag& t, double tol = 1e-12);

/// Number of eigenvalues strictly below x (LDL^T sign count).
std::size_t sturm_count(const SymTridiag& t, double x);

struct Outliers {
  std::vector<double> below;  ///< ascending
  std::vector<double> above;  ///< ascending
};

/// Eigenvalues below interval.first - margin and above interval.second + margin,
/// located by Sturm counts and refined by bisection to width 1e-12 ||t||_inf.
Outliers outliers(const SymTridiag& t, std::pair<double, double> interval, double margin);

/// k-th smallest eigenvalue (k from 0) by Sturm bisection on [lo, hi].
double kth_eigenvalue(const SymTridiag& t, std::size_t k, double lo, double hi, double width);

/// Test oracle: expand det(t - x I) into monomial coefficients and isolate
/// its real roots by bisection between critical points. Dimension <= 5.
std::vector<double> charpoly_eigs_bruteforce(const SymTridiag& t);

}  // namespace specop
