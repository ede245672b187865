#pragma once

#include <cstddef>
#include <vector>

#include "gravdirac/radial_operator.hpp"

namespace gravdirac {

// number of eigenvalues of T strictly below lambda
std::size_t sturm_count(const Tridiag& T, double lambda);

struct WindowEigenvalues {
  std::size_t below = 0;        // eigenvalues below the window
  std::size_t in_window = 0;    // total inside (lo, hi)
  std::vector<double> values;   // lowest min(in_window, max_count), ascending
};

// Bisection on Sturm counts, one eigenvalue index per task.
WindowEigenvalues eigenvalues_in(const Tridiag& T, double lo, double hi, std::size_t max_count);
WindowEigenvalues eigenvalues_in_serial(const Tridiag& T, double lo, double hi,
                                        std::size_t max_count);

// Eigenvectors by inverse iteration (LAPACK dstein); values must be ascending.
std::vector<std::vector<double>> eigenvectors(const Tridiag& T, const std::vector<double>& values);

}  // namespace gravdirac
