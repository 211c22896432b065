#pragma once

#include "gmdist/models.hpp"
#include "gmdist/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gmdist {

/// Thrown for walks whose consecutive crossings do not share a block, or that
/// name curves/blocks outside the gain graph.
class WalkError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A crossing of a curve; forward runs tail block -> head block.
struct Crossing {
  std::size_t curve = 0;
  bool forward = true;

  bool operator==(const Crossing&) const = default;
};

struct Walk {
  std::size_t start = 0;
  std::vector<Crossing> crossings;

  bool operator==(const Walk&) const = default;
};

/// Index view of a horizontal surface as a gain graph. Blocks and curves are
/// ordered by id, which fixes the spanning tree and every report ordering.
class GainGraph {
 public:
  GainGraph(const HorizontalSurface& s);  // NOLINT: implicit by design of the API

  std::size_t block_count() const { return block_ids_.size(); }
  std::size_t curve_count() const { return curves_.size(); }

  const std::string& block_id(std::size_t b) const { return block_ids_.at(b); }
  const std::string& curve_id(std::size_t c) const { return curves_.at(c).id; }
  const Curve& curve(std::size_t c) const { return curves_.at(c); }
  std::size_t tail(std::size_t c) const { return tails_.at(c); }
  std::size_t head(std::size_t c) const { return heads_.at(c); }

  std::optional<std::size_t> find_block(std::string_view id) const;
  std::optional<std::size_t> find_curve(std::string_view id) const;

  std::size_t source(Crossing x) const { return x.forward ? tail(x.curve) : head(x.curve); }
  std::size_t target(Crossing x) const { return x.forward ? head(x.curve) : tail(x.curve); }

  /// |b/a| forward, |a/b| backward.
  Rational gain(Crossing x) const;

  /// (a, b) as seen by the crossing; reversal swaps the roles.
  std::pair<std::int64_t, std::int64_t> slope(Crossing x) const;

  /// Crossings leaving block b, ordered by curve index; a loop appears twice.
  const std::vector<Crossing>& leaving(std::size_t b) const { return leaving_.at(b); }

  /// End block of a walk; throws WalkError if the walk is malformed.
  std::size_t end_of(const Walk& w) const;
  bool is_closed(const Walk& w) const { return end_of(w) == w.start; }

  /// Parses "c1,-c2,c3" (a leading '-' crosses backward). The walk starts at
  /// the source of its first crossing.
  Walk parse_walk(std::string_view text) const;
  std::string format(const Walk& w) const;

 private:
  std::vector<std::string> block_ids_;
  std::vector<Curve> curves_;
  std::vector<std::size_t> tails_;
  std::vector<std::size_t> heads_;
  std::vector<std::vector<Crossing>> leaving_;
};

Walk inverse(const Walk& w, const GainGraph& g);
Walk concatenate(const Walk& u, const Walk& v);

/// Product of crossing gains along the walk; 1 for a walk with no crossings.
Rational dilation_of_walk(const GainGraph& g, const Walk& w);

struct CycleGain {
  std::size_t generator = 0;  // the non-tree curve closing the cycle
  Walk cycle;                 // closed walk based at its component's root
  Rational gain;
};

/// One fundamental cycle per non-tree curve of the breadth-first spanning
/// forest rooted at the lowest block id.
std::vector<CycleGain> cycle_basis_gains(const GainGraph& g);

bool is_virtually_embedded(const GainGraph& g);

/// phi with phi(root) = 1 and gain(c) = phi(head)/phi(tail) for every curve,
/// indexed like GainGraph blocks; nullopt when the gain graph is unbalanced.
std::optional<std::vector<Rational>> vertex_potentials(const GainGraph& g);

/// max over curves of max(|a/b|, |b/a|). Throws std::invalid_argument when the
/// surface has no curves.
Rational governor(const GainGraph& g);

struct LambdaBounds {
  Rational power_bound;          // governor^(block count)
  std::optional<Rational> exact; // max phi / min phi, balanced only
};

LambdaBounds lambda_bounds(const GainGraph& g);

enum class DistortionClass { Quadratic, Exponential };

const char* to_string(DistortionClass c);

DistortionClass distortion_class(const GainGraph& g);

struct DilationReport {
  bool balanced = true;
  std::vector<CycleGain> cycle_gains;
  Rational governor;
  Rational lambda_power_bound;
  std::optional<Rational> lambda_exact;
  DistortionClass distortion_class = DistortionClass::Quadratic;
};

DilationReport make_report(const GainGraph& g);

/// One-line verdict, e.g. "Quadratic, balanced, ε=1, Λ=1".
std::string summary_line(const DilationReport& r);
std::string render_text(const DilationReport& r, const GainGraph& g);
/// Header plus one row per basis cycle.
std::string render_csv(const DilationReport& r, const GainGraph& g);

}  // namespace gmdist
