#include "gmdist/probe.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace gmdist;

namespace {

HorizontalSurface loop(std::int64_t a, std::int64_t b) { return {{{"B", "P"}}, {{"c", "B", "B", "e", a, b}}}; }

}  // namespace

TEST_CASE("cyclically_reduce") {
  HorizontalSurface s{{{"B", "P"}, {"C", "Q"}},
                      {{"c1", "B", "C", "e1", 1, 2}, {"c2", "B", "C", "e2", 1, 1}, {"c3", "B", "B", "e3", 1, 3}}};
  GainGraph g(s);
  CHECK(g.format(cyclically_reduce(g.parse_walk("c1,-c1,c3"), g)) == "c3");
  CHECK(g.format(cyclically_reduce(g.parse_walk("c1,-c2,c3,c2,-c2,-c3,c2,-c1"), g)) == "@B");
  CHECK(g.format(cyclically_reduce(g.parse_walk("c1,-c2,c3,c1,-c1,-c3"), g)) == "c1,-c2");
  auto w = g.parse_walk("c1,-c2,c3,c1,-c2,-c3");
  CHECK(dilation_of_walk(g, cyclically_reduce(w, g)) == dilation_of_walk(g, w));
  CHECK_THROWS_AS(cyclically_reduce(g.parse_walk("c1"), g), WalkError);
}

TEST_CASE("select_cycle") {
  GainGraph l(loop(2, 1));
  auto c = select_cycle(l);
  REQUIRE(c);
  CHECK(l.format(*c) == "-c");
  CHECK(dilation_of_walk(l, *c) == 2);

  HorizontalSurface tree{{{"B", "P"}, {"C", "Q"}}, {{"c", "B", "C", "e", 2, 3}}};
  CHECK_FALSE(select_cycle(tree));

  // a short balanced cycle and a longer unbalanced one: the unbalanced one wins
  HorizontalSurface mixed{{{"A", "P"}, {"B", "Q"}, {"C", "R"}},
                          {{"c1", "A", "B", "e1", 1, 1},
                           {"c2", "A", "B", "e2", 1, 1},
                           {"c3", "B", "C", "e3", 1, 1},
                           {"c4", "C", "A", "e4", 1, 2}}};
  GainGraph gm(mixed);
  auto pick = select_cycle(gm);
  REQUIRE(pick);
  CHECK(dilation_of_walk(gm, *pick) == 2);
  CHECK(pick->crossings.size() == 3);

  HorizontalSurface balanced{{{"A", "P"}, {"B", "Q"}}, {{"c1", "A", "B", "e1", 2, 3}, {"c2", "A", "B", "e2", 2, 3}}};
  GainGraph gb(balanced);
  auto pb = select_cycle(gb);
  REQUIRE(pb);
  CHECK(dilation_of_walk(gb, *pb) == 1);
}

TEST_CASE("probe on the loop (1,2)") {
  GainGraph g(loop(1, 2));
  auto table = distortion_probe(g, *select_cycle(g), {});
  REQUIRE(table.rows.size() == 12);
  for (std::size_t n = 1; n <= 12; ++n) {
    Integer expected = 1;
    expected <<= static_cast<mp_bitcnt_t>(n + 1);
    expected -= static_cast<long>(n + 2);
    CHECK(table.rows[n - 1].f == expected);
  }
  CHECK(table.verdict == DistortionClass::Exponential);
  CHECK(table.consistent());
  CHECK(std::abs(table.fit.exp_base - 2.0) < 0.2);
  CHECK(verdict_line(table).rfind("EXPONENTIAL (base ≈ 2.01", 0) == 0);
  const auto csv = growth_csv(table);
  CHECK(csv.rfind("n,f_n,lower_bound,upper_bound,fit_kind,fit_param", 0) == 0);
  CHECK(csv.find("\n12,8178,16356,45,exponential,") != std::string::npos);
}

TEST_CASE("probe on the identity loop") {
  GainGraph g(loop(1, 1));
  auto table = distortion_probe(g, *select_cycle(g), {});
  CHECK(table.verdict == DistortionClass::Quadratic);
  CHECK(verdict_line(table) == "QUADRATIC");
  CHECK(table.fit.quad_coef > 0);
  CHECK(table.fit.increment_exponent == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("probe preconditions") {
  GainGraph g(loop(1, 2));
  ProbeParams p;
  p.n_max = 3;
  CHECK_THROWS_AS(distortion_probe(g, *select_cycle(g), p), std::invalid_argument);
  p.n_max = 8;
  p.r = 0;
  CHECK_THROWS_AS(distortion_probe(g, *select_cycle(g), p), std::invalid_argument);
  std::vector<GrowthRow> rows(3);
  CHECK_THROWS_AS(fit_growth(rows), std::invalid_argument);
}

TEST_CASE("probe rows: lower nondecreasing, upper affine, growth shape") {
  testing::Rng rng(51);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto s = trial % 2 ? testing::random_balanced_surface(rng, {4, 6, 6, true})
                       : testing::random_surface(rng, {4, 6, 4, true});
    GainGraph g(s);
    auto c = select_cycle(g);
    if (!c) continue;
    ++checked;
    ProbeParams p;
    p.eta = make_rational(testing::uniform(rng, 0, 4), 2);
    auto t = distortion_probe(g, *c, p);
    const auto m = t.slopes.period();
    std::int64_t A = 0;
    for (auto a : t.slopes.a) A = std::max<std::int64_t>(A, 1 + std::abs(a));
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
      CHECK(t.rows[i].lower >= t.rows[i - 1].lower);
      CHECK(t.rows[i].upper - t.rows[i - 1].upper == 2 * Rational(static_cast<long>(m)) * (p.eta + A));
      CHECK(t.rows[i].chain <= t.rows[i].upper);
    }
    if (t.w == 1) {
      const auto band = testing::quadratic_band(build_sequence(t.slopes, p.mu, p.n_max));
      for (std::size_t i = 3; i < t.rows.size(); ++i) {
        const Rational ratio = Rational(t.rows[i].f) / Rational(static_cast<long>(t.rows[i].n * t.rows[i].n));
        CHECK(band.lo <= ratio);
        CHECK(ratio <= band.hi);
      }
    } else {
      // log(lower)/n settles near log w: successive values move less and less
      const auto& r = t.rows;
      const auto q = [&](std::size_t i) { return log_of(r[i].lower) / static_cast<double>(r[i].n); };
      CHECK(std::abs(q(11) - q(10)) <= std::abs(q(5) - q(4)) + 1e-12);
    }
  }
  CHECK(checked > 20);
}
