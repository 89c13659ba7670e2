#include "scimetrics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scimetrics/error.hpp"

namespace scim {

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

std::vector<double> average_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&x](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorCode::invalid_argument, "correlation: length mismatch");
  if (x.size() < 3)
    throw Error(ErrorCode::unprocessable, "correlation: need at least 3 observations");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) throw Error(ErrorCode::unprocessable, "zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorCode::invalid_argument, "correlation: length mismatch");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

double snap_to_grid(long double v) {
  if (!std::isfinite(static_cast<double>(v))) return static_cast<double>(v);
  return static_cast<double>(std::ldexp(std::round(std::ldexp(v, kGridBits)), -kGridBits)) + 0.0;
}

Standardized standardize(std::span<const std::optional<double>> column) {
  Standardized out;
  out.values.assign(column.size(), std::nullopt);
  long double sum = 0.0L;
  std::size_t n = 0;
  for (const auto& v : column) {
    if (!v) continue;
    sum += *v;
    ++n;
  }
  if (n < 2) {
    out.constant = true;
    return out;
  }
  const long double m = sum / static_cast<long double>(n);
  long double ss = 0.0L;
  for (const auto& v : column)
    if (v) ss += (*v - m) * (*v - m);
  const long double sd = std::sqrt(ss / static_cast<long double>(n - 1));
  out.mean = static_cast<double>(m);
  out.sd = static_cast<double>(sd);
  // spread below rounding noise of the mean counts as constant
  long double scale = 0.0L;
  for (const auto& v : column)
    if (v) scale = std::max(scale, std::fabs(static_cast<long double>(*v)));
  if (!(sd > scale * 1e-14L)) {
    out.constant = true;
    return out;
  }
  for (std::size_t i = 0; i < column.size(); ++i)
    if (column[i]) out.values[i] = snap_to_grid((*column[i] - m) / sd);
  return out;
}

}  // namespace scim
