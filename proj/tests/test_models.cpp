#include "gmdist/models.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace gmdist;

namespace {

GraphManifold two_pieces() {
  return {{{"P", 2, 1}, {"Q", 2, 1}}, {{"e", "P", "Q"}}};
}

// Identity surface over a manifold: one block per piece, one curve per edge.
HorizontalSurface identity_surface(const GraphManifold& m) {
  HorizontalSurface s;
  for (const auto& p : m.pieces) s.blocks.push_back({"B" + p.id, p.id});
  for (const auto& e : m.edges) s.curves.push_back({"c" + e.id, "B" + e.tail, "B" + e.head, e.id, 1, 1});
  return s;
}

}  // namespace

TEST_CASE("validate_manifold") {
  SUBCASE("two genus-2 pieces joined by one edge") { CHECK(validate_manifold(two_pieces()).ok()); }

  SUBCASE("single piece without edges") {
    GraphManifold m{{{"P", 2, 1}}, {}};
    auto r = validate_manifold(m);
    REQUIRE(r.has(ViolationKind::NoJsjEdge));
    CHECK(std::string(to_string(ViolationKind::NoJsjEdge)) == "no JSJ edge");
  }

  SUBCASE("base genus 1") {
    auto m = two_pieces();
    m.pieces[1].base_genus = 1;
    auto r = validate_manifold(m);
    REQUIRE(r.has(ViolationKind::GenusTooSmall));
    CHECK(r.violations.front().element == "Q");
    CHECK(std::string(to_string(ViolationKind::GenusTooSmall)) == "genus < 2");
  }

  SUBCASE("self-gluing needs two boundary tori") {
    GraphManifold m{{{"P", 2, 1}}, {{"e", "P", "P"}}};
    CHECK(m.degree("P") == 2);
    CHECK(validate_manifold(m).has(ViolationKind::BoundaryTooSmall));
    m.pieces[0].boundary_count = 2;
    CHECK(validate_manifold(m).ok());
  }

  SUBCASE("unknown endpoint, duplicate id, disconnected") {
    auto m = two_pieces();
    m.edges.push_back({"f", "P", "X"});
    CHECK(validate_manifold(m).has(ViolationKind::UnknownPiece));
    m = two_pieces();
    m.pieces.push_back({"P", 2, 1});
    CHECK(validate_manifold(m).has(ViolationKind::DuplicateId));
    m = two_pieces();
    m.pieces.push_back({"R", 2, 1});
    CHECK(validate_manifold(m).has(ViolationKind::Disconnected));
  }
}

TEST_CASE("validate_surface") {
  const auto m = two_pieces();

  SUBCASE("identity surface") { CHECK(validate_surface(m, identity_surface(m)).ok()); }

  SUBCASE("zero coefficient names the curve") {
    auto s = identity_surface(m);
    s.curves[0].a = 0;
    auto r = validate_surface(m, s);
    REQUIRE(r.has(ViolationKind::ZeroCoefficient));
    CHECK(r.violations.front().element == "ce");
    CHECK(r.violations.front().message.find("ce") != std::string::npos);
  }

  SUBCASE("degree-2 piece with curves over one incident edge only") {
    GraphManifold m3{{{"P", 2, 1}, {"Q", 2, 2}, {"R", 2, 1}}, {{"e", "P", "Q"}, {"f", "Q", "R"}}};
    auto s = identity_surface(m3);
    CHECK(validate_surface(m3, s).ok());
    // a second block over Q touching only e
    s.blocks.push_back({"BQ2", "Q"});
    s.curves.push_back({"cx", "BP", "BQ2", "e", 1, 1});
    auto r = validate_surface(m3, s);
    REQUIRE(r.has(ViolationKind::LocalSurjectivity));
    bool names_block = false;
    for (const auto& v : r.violations)
      names_block |= (v.kind == ViolationKind::LocalSurjectivity && v.element == "BQ2");
    CHECK(names_block);
  }

  SUBCASE("curve joining the wrong pieces") {
    auto s = identity_surface(m);
    std::swap(s.curves[0].tail_block, s.curves[0].head_block);
    CHECK(validate_surface(m, s).has(ViolationKind::NotAMorphism));
  }

  SUBCASE("unknown references") {
    auto s = identity_surface(m);
    s.curves[0].over_edge = "zzz";
    CHECK(validate_surface(m, s).has(ViolationKind::UnknownEdge));
    s = identity_surface(m);
    s.curves[0].tail_block = "nope";
    CHECK(validate_surface(m, s).has(ViolationKind::UnknownBlock));
    s = identity_surface(m);
    s.blocks[0].piece = "nope";
    CHECK(validate_surface(m, s).has(ViolationKind::UnknownPiece));
  }

  SUBCASE("no curves") {
    HorizontalSurface s{{{"BP", "P"}}, {}};
    CHECK(validate_surface(m, s).has(ViolationKind::EmptySurface));
  }
}

TEST_CASE("every single-field corruption of a valid surface is rejected") {
  testing::Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = testing::random_surface(rng, {6, 9, 9, true});
    const auto m = testing::manifold_for(s);
    REQUIRE(validate_manifold(m).ok());
    REQUIRE(validate_surface(m, s).ok());

    const auto ci = static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<std::int64_t>(s.curves.size() - 1)));

    auto zeroed = s;
    (testing::uniform(rng, 0, 1) ? zeroed.curves[ci].a : zeroed.curves[ci].b) = 0;
    CHECK_FALSE(validate_surface(m, zeroed).ok());

    // each curve is the only one over its edge, so deleting it breaks local surjectivity
    auto deleted = s;
    deleted.curves.erase(deleted.curves.begin() + static_cast<std::ptrdiff_t>(ci));
    CHECK(validate_surface(m, deleted).has(ViolationKind::LocalSurjectivity));

    if (s.blocks.size() > 1) {
      auto remapped = s;
      auto& b = remapped.blocks[static_cast<std::size_t>(
          testing::uniform(rng, 0, static_cast<std::int64_t>(s.blocks.size() - 1)))];
      b.piece = b.piece == "P0" ? "P1" : "P0";
      CHECK_FALSE(validate_surface(m, remapped).ok());
    }
  }
}

TEST_CASE("curves cover every edge at a piece carrying a block") {
  testing::Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = testing::random_balanced_surface(rng, {7, 10, 9, true});
    const auto m = testing::manifold_for(s);
    REQUIRE(validate_surface(m, s).ok());
    for (const auto& e : m.edges) {
      bool covered = false;
      for (const auto& c : s.curves) covered |= (c.over_edge == e.id);
      CHECK(covered);
    }
  }
}
