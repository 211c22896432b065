#pragma once

// Random instance generators shared by the unit tests, the acceptance suite
// and the benchmark. All generators are deterministic given the engine.

#include "gmdist/geometry.hpp"
#include "gmdist/models.hpp"
#include "gmdist/spiral.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace gmdist::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline std::int64_t nonzero(Rng& rng, std::int64_t bound) {
  auto v = uniform(rng, 1, bound);
  return uniform(rng, 0, 1) ? v : -v;
}

inline std::string block_name(std::size_t i) { return "B" + std::to_string(i); }
inline std::string curve_name(std::size_t i) { return "c" + std::to_string(i); }

struct GainGraphShape {
  std::size_t max_blocks = 8;
  std::size_t max_curves = 12;
  std::int64_t coef_bound = 9;
  bool connected = true;
};

/// Random surface whose gains come from potentials in {1,2,3,4,6,8,9}, so
/// every cycle gain is 1 and |a|, |b| <= 9.
inline HorizontalSurface random_balanced_surface(Rng& rng, const GainGraphShape& shape) {
  static const std::int64_t kPotentials[] = {1, 2, 3, 4, 6, 8, 9};
  const auto nb = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(shape.max_blocks)));
  const auto nc_min = shape.connected ? nb - 1 : 0;
  const auto nc = static_cast<std::size_t>(uniform(rng, static_cast<std::int64_t>(std::max<std::size_t>(nc_min, 1)),
                                                   static_cast<std::int64_t>(std::max(shape.max_curves, nc_min + 1))));
  std::vector<std::int64_t> phi(nb);
  for (auto& p : phi) p = kPotentials[uniform(rng, 0, 6)];
  HorizontalSurface s;
  for (std::size_t i = 0; i < nb; ++i) s.blocks.push_back({block_name(i), "P" + std::to_string(i)});
  for (std::size_t i = 0; i < nc; ++i) {
    std::size_t u, v;
    if (shape.connected && i + 1 < nb) {
      v = i + 1;
      u = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(i)));
    } else {
      u = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(nb - 1)));
      v = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(nb - 1)));
    }
    if (uniform(rng, 0, 1)) std::swap(u, v);
    // gain |b/a| = phi(v)/phi(u)
    std::int64_t a = phi[u], b = phi[v];
    const auto g = std::gcd(a, b);
    a /= g;
    b /= g;
    const auto k = uniform(rng, 1, std::max<std::int64_t>(1, shape.coef_bound / std::max(a, b)));
    a *= uniform(rng, 0, 1) ? k : -k;
    b *= uniform(rng, 0, 1) ? k : -k;
    s.curves.push_back({curve_name(i), block_name(u), block_name(v), "e" + std::to_string(i), a, b});
  }
  return s;
}

/// Random coefficients; usually unbalanced once the graph has a cycle.
inline HorizontalSurface random_surface(Rng& rng, const GainGraphShape& shape) {
  auto s = random_balanced_surface(rng, shape);
  for (auto& c : s.curves) {
    c.a = nonzero(rng, shape.coef_bound);
    c.b = nonzero(rng, shape.coef_bound);
  }
  return s;
}

/// One piece per block and one JSJ edge per curve; the surface then satisfies
/// every validation rule by construction.
inline GraphManifold manifold_for(const HorizontalSurface& s) {
  GraphManifold m;
  for (const auto& b : s.blocks) m.pieces.push_back({b.piece, 2, 1});
  for (const auto& c : s.curves) {
    const auto* t = s.find_block(c.tail_block);
    const auto* h = s.find_block(c.head_block);
    m.edges.push_back({c.over_edge, t->piece, h->piece});
  }
  for (auto& p : m.pieces) p.boundary_count = std::max(1, m.degree(p.id));
  return m;
}

inline SlopeCycle random_slope_cycle(Rng& rng, std::size_t max_period, std::int64_t coef_bound) {
  SlopeCycle s;
  const auto m = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_period)));
  for (std::size_t i = 0; i < m; ++i) {
    s.a.push_back(nonzero(rng, coef_bound));
    s.b.push_back(nonzero(rng, coef_bound));
  }
  return s.normalized();
}

/// Slope cycle with w = 1: b_i chosen so the running product telescopes.
inline SlopeCycle random_balanced_slope_cycle(Rng& rng, std::size_t max_period) {
  static const std::int64_t kPotentials[] = {1, 2, 3, 4, 6};
  const auto m = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_period)));
  std::vector<std::int64_t> phi(m);
  for (auto& p : phi) p = kPotentials[uniform(rng, 0, 4)];
  SlopeCycle s;
  for (std::size_t i = 0; i < m; ++i) {
    std::int64_t a = phi[i], b = phi[(i + 1) % m];
    const auto g = std::gcd(a, b);
    s.a.push_back(uniform(rng, 0, 1) ? a / g : -a / g);
    s.b.push_back(uniform(rng, 0, 1) ? b / g : -b / g);
  }
  return s;
}

/// Integral unimodular right basis whose fiber meets the left fiber once.
inline PlaneCharts::Matrix random_chart_matrix(Rng& rng) {
  // columns (p, e) and (q, r) with p r - q e = +-1, e = +-1
  const std::int64_t e = uniform(rng, 0, 1) ? 1 : -1;
  const std::int64_t p = uniform(rng, -6, 6);
  const std::int64_t r = uniform(rng, -6, 6);
  const std::int64_t det = uniform(rng, 0, 1) ? 1 : -1;
  // p r - q e = det  =>  q = (p r - det) / e
  const std::int64_t q = (p * r - det) * e;
  return {{{p, q}, {e, r}}};
}

/// Certified band [lo, hi] for f(n)/n^2 when w = 1 and n >= 4. The one-cycle
/// inequality gives |t(j)| >= xi floor((j-1)/m), so f(n) >= xi m n(n-1)/2.
/// Unrolling the window recursion gives |t(j)| <= Lambda_seq (|t(1)| + A(j-1))
/// with Lambda_seq the largest product of consecutive |b_{l-1}/a_l|.
struct QuadraticBand {
  Rational lo;
  Rational hi;
};

inline QuadraticBand quadratic_band(const SpiralSequence& seq) {
  const auto& s = seq.slopes;
  const std::size_t m = s.period();
  Rational lambda_seq = 1;
  for (std::size_t i = 2; i <= m + 1; ++i) {
    Rational prod = 1;
    for (std::size_t l = i; l < i + m - 1; ++l) {
      prod *= abs_ratio(s.b_at(l - 1), s.a_at(l));
      lambda_seq = std::max(lambda_seq, prod);
    }
  }
  const Rational mm = Rational(static_cast<long>(m));
  return {3 * seq.xi * mm / 8, lambda_seq * (mm * Rational(abs(seq.t[0])) / 4 + Rational(seq.A) * mm * mm / 2)};
}

/// Random walk of `length` crossings starting anywhere.
inline Walk random_walk(Rng& rng, const GainGraph& g, std::size_t length) {
  Walk w;
  w.start = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(g.block_count() - 1)));
  std::size_t at = w.start;
  for (std::size_t i = 0; i < length; ++i) {
    const auto& out = g.leaving(at);
    if (out.empty()) break;
    auto x = out[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(out.size() - 1)))];
    w.crossings.push_back(x);
    at = g.target(x);
  }
  return w;
}

}  // namespace gmdist::testing
