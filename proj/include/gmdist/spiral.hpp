#pragma once

#include "gmdist/dilation.hpp"
#include "gmdist/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace gmdist {

/// The (a_i, b_i) slopes met by a closed walk, extended m-periodically.
struct SlopeCycle {
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;

  std::size_t period() const { return a.size(); }
  // 1-based, periodic.
  std::int64_t a_at(std::size_t j) const { return a[(j - 1) % a.size()]; }
  std::int64_t b_at(std::size_t j) const { return b[(j - 1) % b.size()]; }

  /// w = prod |b_i / a_i|.
  Rational dilation() const;
  /// The slopes of the reversed cycle; its dilation is 1/w.
  SlopeCycle reversed() const;
  /// Returns *this if w >= 1, otherwise reversed().
  SlopeCycle normalized() const;

  bool operator==(const SlopeCycle&) const = default;
};

/// Slopes of a closed walk, in crossing order.
SlopeCycle slope_cycle(const GainGraph& g, const Walk& closed_walk);

/// The walk or its inverse, whichever has dilation >= 1.
Walk orient_cycle(const GainGraph& g, const Walk& closed_walk);

struct SpiralSequence {
  SlopeCycle slopes;
  Integer mu;
  std::size_t n_periods = 0;
  std::vector<Integer> t;  // t[0] is t(1); length n_periods * m + 1
  Integer A;               // max(1 + |a_i|)
  Rational xi;             // min |1/a_i|
  Rational lambda;         // min(1, min |b_{j-1}/a_j|)
  Rational w;

  const Integer& t_at(std::size_t j) const { return t.at(j - 1); }
  std::size_t length() const { return t.size(); }
};

/// t(1) = ceil(mu / lambda^(m-1)); each later |t(j)| is the least integer of its
/// governor window, signed so that t(j)a_j and t(j-1)b_{j-1} have opposite signs.
/// Throws std::invalid_argument if w < 1, a coefficient is zero, or mu < 1.
SpiralSequence build_sequence(const SlopeCycle& slopes, const Integer& mu, std::size_t n_periods);

/// Closed integer window [lo, hi] for |t(j)|, j > 1, before rounding.
struct Window {
  Rational lo;
  Rational hi;
};
Window governor_window(const SlopeCycle& slopes, const Integer& A, const Integer& previous_t, std::size_t j);

enum class CheckKind {
  Parameters,     // A, xi, lambda, w consistent with the slopes
  LowerBound,     // |t(j)| >= mu
  Cancellation,   // |t(j)a_j + t(j-1)b_{j-1}| <= A
  Window,         // 1 <= |t(j)a_j| - |t(j-1)b_{j-1}| <= A
  SignAlternation,
  OneCycle,       // |t(j)| >= xi + w |t(j-m)|
  Ultimate,       // |t(km+1)| >= xi k + |t(1)| w^k
};

const char* to_string(CheckKind k);

struct Check {
  CheckKind kind;
  std::size_t j = 0;
  Rational margin;  // >= 0 iff the inequality holds
  bool passed = true;
  std::string detail;
};

struct Certificate {
  std::vector<Check> checks;

  bool ok() const;
  const Check* first_failure() const;
  std::size_t count(CheckKind k) const;
};

/// Exact re-check of every inequality the construction promises. Works on
/// arbitrary (possibly tampered) sequences.
Certificate verify_sequence(const SpiralSequence& seq);

/// f(n) = sum_{j <= nm} |t(j)| for every n with nm <= length.
std::vector<Integer> partial_sums(const SpiralSequence& seq);

/// CSV: j, t, a, b, window bounds, the window difference, cancellation residual,
/// and the one-cycle / ultimate margins where defined.
std::string sequence_csv(const SpiralSequence& seq);

struct PowerLetter {
  std::string curve;
  Integer exponent;
  std::size_t index = 0;  // j of alpha_j; 0 for the middle letter of a double spiral
};

struct ConnectorLetter {
  std::string block;  // block containing gamma_j
  std::size_t index = 0;
  bool inverted = false;
};

using SpiralLetter = std::variant<PowerLetter, ConnectorLetter>;

struct SpiralWord {
  std::vector<SpiralLetter> letters;
  bool doubled = false;
  Rational length_lower_bound;  // r * sum |exponents|

  std::size_t exponent_block_count() const;
  std::vector<Integer> exponents() const;
  std::string to_string() const;
};

struct SpiralPair {
  SpiralWord sigma;
  SpiralWord rho;
};

/// sigma_n = alpha_1 gamma_1 ... alpha_nm gamma_nm and
/// rho_n = sigma_n c_1^{t(1)} sigma_n^{-1}. `cycle` must be the oriented closed
/// walk the sequence was built from; r is the minimum curve length.
SpiralPair spiral_words(const SpiralSequence& seq, const GainGraph& g, const Walk& cycle, std::size_t n,
                        const Rational& r);

}  // namespace gmdist
