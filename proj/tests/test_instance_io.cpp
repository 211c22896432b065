#include "gmdist/instance_io.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>

using namespace gmdist;

namespace {

const char* kLoop = R"(# comment line
[manifold]
piece P genus=2 boundary=2   # trailing comment
edge e tail=P head=P

[surface]
block B over=P
curve c tail=B head=B over=e a=1 b=-2

[params]
L=3/2 eta=1

[probe]
mu=2 nmax=10
cycle=c
)";

std::size_t error_line(const std::string& text) {
  try {
    parse_instance(text, "t");
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse a complete instance") {
  auto inst = parse_instance(kLoop);
  REQUIRE(inst.manifold.pieces.size() == 1);
  CHECK(inst.manifold.pieces[0] == SeifertPiece{"P", 2, 2});
  CHECK(inst.manifold.edges[0] == JsjEdge{"e", "P", "P"});
  CHECK(inst.surface.curves[0] == Curve{"c", "B", "B", "e", 1, -2});
  REQUIRE(inst.params);
  CHECK(inst.params->L == make_rational(3, 2));
  CHECK(inst.params->eta == 1);
  CHECK(inst.params->rho == 1);
  REQUIRE(inst.probe);
  CHECK(*inst.probe->mu == 2);
  CHECK(*inst.probe->nmax == 10);
  CHECK_FALSE(inst.probe->periods);
  CHECK(*inst.probe->cycle == "c");
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_instance("[manifold]\npiece P genus=2 boundary=2 colour=red\n[surface]\n", "x.gm");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 28);
    CHECK(std::string(e.what()) == "x.gm:2:28: unknown key 'colour'");
  }

  const std::string head = "[manifold]\npiece P genus=2 boundary=2\nedge e tail=P head=P\n[surface]\nblock B over=P\n";
  CHECK(error_line(head + "curve c tail=B head=B over=e a=1\n") == 6);                // missing b
  CHECK(error_line(head + "curve c tail=B head=B over=e a=1 b=x\n") == 6);            // not an integer
  CHECK(error_line(head + "curve c tail=B head=B over=e a=1 b=1 a=2\n") == 6);        // duplicate key
  CHECK(error_line(head + "block B over=P\n") == 6);                                   // duplicate id
  CHECK(error_line(head + "curve 9c tail=B head=B over=e a=1 b=1\n") == 6);           // bad id
  CHECK(error_line(head + "vertex V\n") == 6);                                          // unknown statement
  CHECK(error_line(head + "[extras]\n") == 6);                                         // unknown section
  CHECK(error_line(head + "[manifold]\n") == 6);                                       // duplicate section
  CHECK(error_line(head + "curve c tail=B head=B over=e a=1 b=99999999999999\n") == 6);  // out of range
  CHECK(error_line(head + "[probe]\nmu=0\n") == 7);
  CHECK(error_line(head + "[params]\nL=1.5\n") == 7);
  CHECK(error_line("piece P genus=2 boundary=2\n") == 1);                              // outside a section
  CHECK(error_line("[manifold]\npiece P genus=2 boundary=2\n") > 0);                   // missing [surface]
}

TEST_CASE("load_instance reports unreadable files as IoError") {
  CHECK_THROWS_AS(load_instance("/nonexistent/dir/x.gm"), IoError);
  auto inst = load_instance(std::filesystem::path(GMDIST_DATA_DIR) / "identity.gm");
  CHECK(inst.surface.curves.size() == 1);
}

TEST_CASE("serialize is canonical and round-trips") {
  auto inst = parse_instance(kLoop);
  const auto text = serialize(inst);
  CHECK(parse_instance(text) == inst);
  CHECK(serialize(parse_instance(text)) == text);

  testing::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    Instance x;
    x.surface = testing::random_surface(rng, {});
    x.manifold = testing::manifold_for(x.surface);
    if (i % 2) x.params = GeometryParams{make_rational(5, 4), 2, make_rational(1, 3), 0, 1, make_rational(1, 2)};
    if (i % 3 == 0) x.probe = ProbeSection{Integer(3), 8, std::nullopt, std::string("c0,-c1")};
    const auto s = serialize(x);
    CHECK(parse_instance(s) == x);
    CHECK(serialize(parse_instance(s)) == s);
  }
}

TEST_CASE("every data file is canonical after one round") {
  for (const auto& entry : std::filesystem::recursive_directory_iterator(GMDIST_DATA_DIR)) {
    if (entry.path().extension() != ".gm" || entry.path().filename() == "malformed.gm") continue;
    CAPTURE(entry.path().string());
    const auto once = serialize(load_instance(entry.path()));
    CHECK(serialize(parse_instance(once)) == once);
  }
}

TEST_CASE("parse_params_list") {
  auto p = parse_params_list("2,3,1/2,0,1,1");
  CHECK(p.L == 2);
  CHECK(p.Lp == 3);
  CHECK(p.rho == make_rational(1, 2));
  CHECK_THROWS_AS(parse_params_list("1,2,3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_params_list("1,2,3,4,5,x"), std::invalid_argument);
}
