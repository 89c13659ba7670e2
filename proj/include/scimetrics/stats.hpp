#pragma once

#include <optional>
#include <span>
#include <vector>

namespace scim {

// Z-scores and composite scores are snapped to multiples of 2^-kGridBits.
// An affine rescaling of a raw column perturbs its z-scores by rounding
// noise near 1e-16; the grid absorbs that noise so fits and rankings come
// out bit-identical, and exact ties stay tied.
inline constexpr int kGridBits = 32;
double snap_to_grid(long double v);

double mean(std::span<const double> x);
/// Sample standard deviation (n - 1 denominator).
double sample_sd(std::span<const double> x);

/// 1-based ascending ranks; tied values share the average of their ranks.
std::vector<double> average_ranks(std::span<const double> x);

/// Sample Pearson correlation. Needs equal lengths >= 3 and nonzero
/// variance on both sides; the result is clamped to [-1, 1].
double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of tie-averaged ranks.
double spearman(std::span<const double> x, std::span<const double> y);

struct Standardized {
  std::vector<std::optional<double>> values;
  double mean = 0.0;
  double sd = 0.0;
  bool constant = false;  // fewer than two present values or zero spread
};

/// Z-scores over the present values of a column (sample sd). Computed in
/// extended precision and rounded to 44 significant bits, so a column and
/// any positive-affine image of it standardize to the same doubles.
Standardized standardize(std::span<const std::optional<double>> column);

}  // namespace scim
