#pragma once

#include "gmdist/dilation.hpp"
#include "gmdist/geometry.hpp"
#include "gmdist/spiral.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gmdist {

/// Removes backtracking pairs, including across the base point; the result is
/// conjugate to the input and has the same dilation.
Walk cyclically_reduce(const Walk& closed_walk, const GainGraph& g);

/// Deterministic probe cycle: the shortest fundamental cycle, restricted to
/// gain != 1 when the surface is unbalanced, cyclically reduced and oriented
/// so its dilation is >= 1. nullopt when the gain graph is a tree.
std::optional<Walk> select_cycle(const GainGraph& g);

struct ProbeParams {
  Integer mu = 1;
  std::size_t n_max = 12;
  Rational eta = 0;
  Rational R = 1;
  Rational r = 1;
};

struct GrowthRow {
  std::size_t n = 0;
  Integer f;        // sum_{j <= nm} |t(j)|
  Rational lower;   // 2 r f(n)
  Rational chain;   // doubled corner chain, exact gaps
  Rational upper;   // linear ambient bound
};

struct GrowthFit {
  std::size_t first_n = 0;  // fits use n in [first_n, n_max]
  double exp_base = 1;      // exp of the slope of log(lower) against n
  double quad_coef = 0;     // lower ~ quad_coef * n^2 + quad_intercept
  double quad_intercept = 0;
  double increment_exponent = 0;  // slope of log(lower(n) - lower(n-1)) against log n
};

/// Least squares on the last half of the rows. Needs at least 4 rows.
GrowthFit fit_growth(std::span<const GrowthRow> rows);

/// Exponential iff successive increments grow faster than n^2; quadratic
/// growth has increments linear in n.
inline constexpr double kExponentialIncrementExponent = 2.0;

DistortionClass growth_verdict(const GrowthFit& fit);

struct GrowthTable {
  Walk cycle;
  SlopeCycle slopes;
  Rational w;
  std::vector<GrowthRow> rows;
  GrowthFit fit;
  DistortionClass verdict = DistortionClass::Quadratic;
  DistortionClass expected = DistortionClass::Quadratic;  // from the dilation criterion

  bool consistent() const { return verdict == expected; }
};

/// Throws std::invalid_argument for n_max < 4 or a cycle that is not closed
/// or crosses no curve.
GrowthTable distortion_probe(const GainGraph& g, const Walk& cycle, const ProbeParams& params);

/// Columns: n, f_n, lower_bound, upper_bound, fit_kind, fit_param (plus the
/// exact chain length and decimal companions).
std::string growth_csv(const GrowthTable& table);

/// "QUADRATIC" or "EXPONENTIAL (base ~ 2.0003)".
std::string verdict_line(const GrowthTable& table);

}  // namespace gmdist
