#include "swr/rootfind.hpp"

#include <array>
#include <cmath>

namespace swr::detail {

std::vector<double> quadratic_roots(double A, double B, double C) {
  std::vector<double> roots;
  if (A == 0.0) {
    if (B != 0.0) roots.push_back(-C / B);
    return roots;
  }
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return roots;
  const double sq = std::sqrt(disc);
  const double q = (B >= 0.0) ? -0.5 * (B + sq) : -0.5 * (B - sq);
  double r1 = q / A;
  double r2 = (q != 0.0) ? C / q : r1;
  if (r1 > r2) std::swap(r1, r2);
  roots.push_back(r1);
  roots.push_back(r2);
  return roots;
}

namespace {
// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    -0.9602898564975362, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975362};
constexpr std::array<double, 8> kGlWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};
}  // namespace

double integrate_01(const std::function<double(double)>& f, int panels) {
  double total = 0.0;
  const double w = 1.0 / panels;
  for (int k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * w;
    double acc = 0.0;
    for (std::size_t j = 0; j < kGlNodes.size(); ++j) {
      acc += kGlWeights[j] * f(mid + 0.5 * w * kGlNodes[j]);
    }
    total += 0.5 * w * acc;
  }
  return total;
}

}  // namespace swr::detail
