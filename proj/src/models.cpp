#include "gmdist/models.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace gmdist {

namespace {

template <typename T>
const T* find_by_id(const std::vector<T>& items, const std::string& id) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
  return it == items.end() ? nullptr : &*it;
}

// Union-find over string ids; used only for connectivity checks.
class Components {
 public:
  explicit Components(const std::vector<std::string>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) index_[ids[i]] = i;
    parent_.resize(ids.size());
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  void join(const std::string& x, const std::string& y) {
    auto ix = index_.find(x), iy = index_.find(y);
    if (ix == index_.end() || iy == index_.end()) return;
    parent_[root(ix->second)] = root(iy->second);
  }

  std::size_t count() {
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < parent_.size(); ++i) roots.insert(root(i));
    return roots.size();
  }

 private:
  std::size_t root(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }

  std::map<std::string, std::size_t> index_;
  std::vector<std::size_t> parent_;
};

template <typename T>
void report_duplicates(const std::vector<T>& items, const char* what, ValidationResult& out) {
  std::set<std::string> seen;
  for (const auto& x : items) {
    if (!seen.insert(x.id).second) {
      out.violations.push_back({ViolationKind::DuplicateId, x.id, std::string("duplicate ") + what + " id"});
    }
  }
}

}  // namespace

const SeifertPiece* GraphManifold::find_piece(const std::string& id) const { return find_by_id(pieces, id); }

const JsjEdge* GraphManifold::find_edge(const std::string& id) const { return find_by_id(edges, id); }

int GraphManifold::degree(const std::string& piece_id) const {
  int d = 0;
  for (const auto& e : edges) d += (e.tail == piece_id) + (e.head == piece_id);
  return d;
}

const Block* HorizontalSurface::find_block(const std::string& id) const { return find_by_id(blocks, id); }

const Curve* HorizontalSurface::find_curve(const std::string& id) const { return find_by_id(curves, id); }

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NoJsjEdge: return "no JSJ edge";
    case ViolationKind::Disconnected: return "disconnected";
    case ViolationKind::GenusTooSmall: return "genus < 2";
    case ViolationKind::BoundaryTooSmall: return "boundary count < degree";
    case ViolationKind::DuplicateId: return "duplicate id";
    case ViolationKind::UnknownPiece: return "unknown piece";
    case ViolationKind::UnknownBlock: return "unknown block";
    case ViolationKind::UnknownEdge: return "unknown edge";
    case ViolationKind::EmptySurface: return "empty surface";
    case ViolationKind::ZeroCoefficient: return "zero coefficient";
    case ViolationKind::NotAMorphism: return "not a graph morphism";
    case ViolationKind::LocalSurjectivity: return "local surjectivity";
  }
  return "?";
}

bool ValidationResult::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

ValidationResult validate_manifold(const GraphManifold& m) {
  ValidationResult out;
  report_duplicates(m.pieces, "piece", out);
  report_duplicates(m.edges, "edge", out);

  if (m.edges.empty()) {
    out.violations.push_back({ViolationKind::NoJsjEdge, "", "manifold has no JSJ edge (Seifert case excluded)"});
  }
  for (const auto& e : m.edges) {
    for (const auto* end : {&e.tail, &e.head}) {
      if (!m.find_piece(*end)) {
        out.violations.push_back(
            {ViolationKind::UnknownPiece, e.id, "edge " + e.id + " references unknown piece " + *end});
      }
    }
  }
  for (const auto& p : m.pieces) {
    if (p.base_genus < 2) {
      out.violations.push_back({ViolationKind::GenusTooSmall, p.id,
                                "piece " + p.id + " has base genus " + std::to_string(p.base_genus) + " < 2"});
    }
    const int deg = m.degree(p.id);
    if (p.boundary_count < 1 || p.boundary_count < deg) {
      out.violations.push_back({ViolationKind::BoundaryTooSmall, p.id,
                                "piece " + p.id + " has " + std::to_string(p.boundary_count) +
                                    " boundary tori but degree " + std::to_string(deg)});
    }
  }

  std::vector<std::string> ids;
  for (const auto& p : m.pieces) ids.push_back(p.id);
  Components comps(ids);
  for (const auto& e : m.edges) comps.join(e.tail, e.head);
  if (!ids.empty() && comps.count() > 1) {
    out.violations.push_back({ViolationKind::Disconnected, "", "manifold graph is not connected"});
  }
  return out;
}

ValidationResult validate_surface(const GraphManifold& m, const HorizontalSurface& s) {
  ValidationResult out;
  report_duplicates(s.blocks, "block", out);
  report_duplicates(s.curves, "curve", out);

  if (s.curves.empty()) {
    out.violations.push_back({ViolationKind::EmptySurface, "", "surface has no JSJ curves"});
  }
  for (const auto& b : s.blocks) {
    if (!m.find_piece(b.piece)) {
      out.violations.push_back(
          {ViolationKind::UnknownPiece, b.id, "block " + b.id + " lies over unknown piece " + b.piece});
    }
  }

  for (const auto& c : s.curves) {
    if (c.a == 0 || c.b == 0) {
      out.violations.push_back({ViolationKind::ZeroCoefficient, c.id, "curve " + c.id + " has a zero coefficient"});
    }
    const Block* tail = s.find_block(c.tail_block);
    const Block* head = s.find_block(c.head_block);
    const JsjEdge* edge = m.find_edge(c.over_edge);
    if (!tail)
      out.violations.push_back(
          {ViolationKind::UnknownBlock, c.id, "curve " + c.id + " references unknown block " + c.tail_block});
    if (!head)
      out.violations.push_back(
          {ViolationKind::UnknownBlock, c.id, "curve " + c.id + " references unknown block " + c.head_block});
    if (!edge)
      out.violations.push_back(
          {ViolationKind::UnknownEdge, c.id, "curve " + c.id + " lies over unknown edge " + c.over_edge});
    if (tail && head && edge && (tail->piece != edge->tail || head->piece != edge->head)) {
      out.violations.push_back({ViolationKind::NotAMorphism, c.id,
                                "curve " + c.id + " joins blocks over " + tail->piece + "->" + head->piece +
                                    " but edge " + edge->id + " joins " + edge->tail + "->" + edge->head});
    }
  }

  // Each block must meet every boundary torus of its piece: one check per
  // (edge, end) incident to the piece, so a self-glued edge needs two.
  for (const auto& b : s.blocks) {
    for (const auto& e : m.edges) {
      auto has_curve = [&](bool at_tail) {
        return std::any_of(s.curves.begin(), s.curves.end(), [&](const Curve& c) {
          return c.over_edge == e.id && (at_tail ? c.tail_block : c.head_block) == b.id;
        });
      };
      if (e.tail == b.piece && !has_curve(true)) {
        out.violations.push_back({ViolationKind::LocalSurjectivity, b.id,
                                  "block " + b.id + " has no curve leaving along edge " + e.id});
      }
      if (e.head == b.piece && !has_curve(false)) {
        out.violations.push_back({ViolationKind::LocalSurjectivity, b.id,
                                  "block " + b.id + " has no curve entering along edge " + e.id});
      }
    }
  }

  std::vector<std::string> ids;
  for (const auto& b : s.blocks) ids.push_back(b.id);
  Components comps(ids);
  for (const auto& c : s.curves) comps.join(c.tail_block, c.head_block);
  if (!ids.empty() && comps.count() > 1) {
    out.violations.push_back({ViolationKind::Disconnected, "", "surface dual graph is not connected"});
  }
  if (s.blocks.empty()) {
    out.violations.push_back({ViolationKind::EmptySurface, "", "surface has no blocks"});
  }
  return out;
}

}  // namespace gmdist
