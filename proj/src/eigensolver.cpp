#include "gravdirac/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gravdirac/errors.hpp"

extern "C" void dstein_(const int* n, const double* d, const double* e, const int* m,
                        const double* w, const int* iblock, const int* isplit, double* z,
                        const int* ldz, double* work, int* iwork, int* ifail, int* info);

namespace gravdirac {

namespace {

double pivmin(const Tridiag& T) {
  double m = 1.0;
  for (double e : T.off) m = std::max(m, e * e);
  return std::numeric_limits<double>::min() * m;
}

std::size_t count_with(const Tridiag& T, double lambda, double pmin) {
  const std::size_t n = T.size();
  std::size_t neg = 0;
  double q = T.diag[0] - lambda;
  if (std::abs(q) < pmin) q = -pmin;
  if (q < 0) ++neg;
  for (std::size_t i = 1; i < n; ++i) {
    q = T.diag[i] - lambda - T.off[i - 1] * T.off[i - 1] / q;
    if (std::abs(q) < pmin) q = -pmin;
    if (q < 0) ++neg;
  }
  return neg;
}

// eigenvalue with global index idx, known to lie in (lo, hi)
double bisect(const Tridiag& T, std::size_t idx, double lo, double hi, double pmin) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(mid), 1e-300))
      break;
    if (mid <= lo || mid >= hi) break;
    if (count_with(T, mid, pmin) > idx)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

WindowEigenvalues window_setup(const Tridiag& T, double lo, double hi, std::size_t max_count,
                               double pmin) {
  if (T.size() == 0) fail(ErrorKind::InvalidArgument, "empty matrix");
  if (!(lo < hi)) fail(ErrorKind::InvalidArgument, "window must satisfy lo < hi");
  WindowEigenvalues w;
  w.below = count_with(T, lo, pmin);
  w.in_window = count_with(T, hi, pmin) - w.below;
  w.values.assign(std::min(w.in_window, max_count), 0.0);
  return w;
}

}  // namespace

std::size_t sturm_count(const Tridiag& T, double lambda) {
  if (T.size() == 0) return 0;
  return count_with(T, lambda, pivmin(T));
}

WindowEigenvalues eigenvalues_in(const Tridiag& T, double lo, double hi, std::size_t max_count) {
  const double pmin = pivmin(T);
  WindowEigenvalues w = window_setup(T, lo, hi, max_count, pmin);
  const auto m = std::ptrdiff_t(w.values.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < m; ++i)
    w.values[i] = bisect(T, w.below + std::size_t(i), lo, hi, pmin);
  return w;
}

WindowEigenvalues eigenvalues_in_serial(const Tridiag& T, double lo, double hi,
                                        std::size_t max_count) {
  const double pmin = pivmin(T);
  WindowEigenvalues w = window_setup(T, lo, hi, max_count, pmin);
  for (std::size_t i = 0; i < w.values.size(); ++i)
    w.values[i] = bisect(T, w.below + i, lo, hi, pmin);
  return w;
}

std::vector<std::vector<double>> eigenvectors(const Tridiag& T, const std::vector<double>& values) {
  const int n = int(T.size());
  const int m = int(values.size());
  if (m == 0) return {};
  if (!std::is_sorted(values.begin(), values.end()))
    fail(ErrorKind::InvalidArgument, "eigenvalues must be ascending");
  std::vector<double> e(T.off);
  e.push_back(0.0);
  std::vector<int> iblock(m, 1), isplit(1, n), iwork(n), ifail(m);
  std::vector<double> z(std::size_t(n) * m), work(5 * std::size_t(n));
  int info = 0;
  dstein_(&n, T.diag.data(), e.data(), &m, values.data(), iblock.data(), isplit.data(), z.data(),
          &n, work.data(), iwork.data(), ifail.data(), &info);
  if (info < 0) fail(ErrorKind::InvalidArgument, "dstein rejected its arguments");
  if (info > 0) fail(ErrorKind::IntegratorStep, "inverse iteration did not converge");
  std::vector<std::vector<double>> out(m);
  for (int j = 0; j < m; ++j)
    out[j].assign(z.begin() + std::ptrdiff_t(j) * n, z.begin() + std::ptrdiff_t(j + 1) * n);
  return out;
}

}  // namespace gravdirac
