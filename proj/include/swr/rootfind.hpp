#ifndef SWR_ROOTFIND_HPP
#define SWR_ROOTFIND_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

// Small deterministic scalar root-finding kit. Everything here assumes a
// bracket with a sign change and refines it; scanning helpers produce the
// brackets.

namespace swr::detail {

/// Bisection on [lo, hi] with f(lo), f(hi) of opposite sign (or zero).
/// Stops when the interval shrinks below rel_tol * max(1, |x|).
template <typename F>
double bisect(F&& f, double lo, double hi, double flo, double rel_tol = 1e-15,
              int max_iter = 200) {
  if (flo == 0.0) return lo;
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= rel_tol * std::max(1.0, std::fabs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

/// Bisection on a boolean predicate: pred flips exactly once on [lo, hi].
/// Returns the pair (last x with pred==pred(lo), first x with the other
/// value) once |hi-lo| <= abs_tol.
template <typename P>
std::pair<double, double> bisect_predicate(P&& pred, double lo, double hi,
                                           bool pred_lo, double abs_tol,
                                           int max_iter = 200) {
  for (int i = 0; i < max_iter && hi - lo > abs_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (pred(mid) == pred_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

/// Scans f on a uniform n-point grid over [lo, hi] and returns every
/// bracketing sub-interval [x_i, x_{i+1}] with a sign change.
template <typename F>
std::vector<std::pair<double, double>> sign_change_scan(F&& f, double lo,
                                                        double hi,
                                                        std::size_t n) {
  std::vector<std::pair<double, double>> out;
  if (n < 2) return out;
  double xprev = lo;
  double fprev = f(lo);
  for (std::size_t i = 1; i < n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(n - 1);
    const double fx = f(x);
    if (fprev == 0.0 || (fprev < 0.0) != (fx < 0.0)) {
      out.emplace_back(xprev, x);
    }
    xprev = x;
    fprev = fx;
  }
  return out;
}

/// Real roots of A x^2 + B x + C = 0 in ascending order, computed with the
/// cancellation-safe q-formula. Returns an empty vector when the
/// discriminant is negative or A == B == 0.
std::vector<double> quadratic_roots(double A, double B, double C);

/// Composite Gauss-Legendre quadrature of f over [0,1]: `panels` equal
/// sub-intervals, 8 nodes each.
double integrate_01(const std::function<double(double)>& f, int panels);

}  // namespace swr::detail

#endif
