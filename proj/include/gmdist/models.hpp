#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gmdist {

/// Vertex piece of a simple graph manifold: a trivial circle bundle over an
/// orientable surface with `base_genus` >= 2 and `boundary_count` boundary tori.
struct SeifertPiece {
  std::string id;
  int base_genus = 2;
  int boundary_count = 1;

  bool operator==(const SeifertPiece&) const = default;
};

/// Gluing torus between two pieces. `tail` and `head` fix the bookkeeping
/// orientation; tail == head is a self-gluing.
struct JsjEdge {
  std::string id;
  std::string tail;
  std::string head;

  bool operator==(const JsjEdge&) const = default;
};

struct GraphManifold {
  std::vector<SeifertPiece> pieces;
  std::vector<JsjEdge> edges;

  const SeifertPiece* find_piece(const std::string& id) const;
  const JsjEdge* find_edge(const std::string& id) const;
  // Loops count twice.
  int degree(const std::string& piece_id) const;

  bool operator==(const GraphManifold&) const = default;
};

struct Block {
  std::string id;
  std::string piece;

  bool operator==(const Block&) const = default;
};

/// A curve of the surface's JSJ preimage, oriented tail block -> head block
/// along `over_edge`. Its class in the torus is a*[left fiber] + b*[right fiber].
struct Curve {
  std::string id;
  std::string tail_block;
  std::string head_block;
  std::string over_edge;
  std::int64_t a = 1;
  std::int64_t b = 1;

  bool operator==(const Curve&) const = default;
};

/// Horizontal surface as a gain graph over the manifold graph.
struct HorizontalSurface {
  std::vector<Block> blocks;
  std::vector<Curve> curves;

  const Block* find_block(const std::string& id) const;
  const Curve* find_curve(const std::string& id) const;

  bool operator==(const HorizontalSurface&) const = default;
};

enum class ViolationKind {
  NoJsjEdge,
  Disconnected,
  GenusTooSmall,
  BoundaryTooSmall,
  DuplicateId,
  UnknownPiece,
  UnknownBlock,
  UnknownEdge,
  EmptySurface,
  ZeroCoefficient,
  NotAMorphism,
  LocalSurjectivity,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string element;  // id of the offending piece/edge/block/curve
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

ValidationResult validate_manifold(const GraphManifold& m);

/// Checks the surface against an already valid manifold: references, nonzero
/// coefficients, the graph-morphism condition, connectivity, and local
/// surjectivity at every (block, incident edge end).
ValidationResult validate_surface(const GraphManifold& m, const HorizontalSurface& s);

}  // namespace gmdist
