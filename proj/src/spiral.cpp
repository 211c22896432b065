#include "gmdist/spiral.hpp"

#include "gmdist/csv.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gmdist {

namespace {

Integer abs_int(std::int64_t v) { return abs(Integer(static_cast<long>(v))); }

Integer as_int(std::int64_t v) { return Integer(static_cast<long>(v)); }

Integer compute_A(const SlopeCycle& s) {
  std::int64_t best = 0;
  for (auto a : s.a) best = std::max(best, 1 + (a < 0 ? -a : a));
  return as_int(best);
}

Rational compute_xi(const SlopeCycle& s) {
  Rational best = abs_ratio(1, s.a.front());
  for (auto a : s.a) best = std::min(best, abs_ratio(1, a));
  return best;
}

Rational compute_lambda(const SlopeCycle& s) {
  Rational best = 1;
  const std::size_t m = s.period();
  for (std::size_t j = 2; j <= m + 1; ++j) best = std::min(best, abs_ratio(s.b_at(j - 1), s.a_at(j)));
  return best;
}

void require_slopes(const SlopeCycle& s) {
  if (s.a.empty() || s.a.size() != s.b.size())
    throw std::invalid_argument("slope cycle must have m >= 1 matching (a, b) pairs");
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    if (s.a[i] == 0 || s.b[i] == 0) throw std::invalid_argument("slope cycle has a zero coefficient");
  }
}

}  // namespace

Rational SlopeCycle::dilation() const {
  Rational w = 1;
  for (std::size_t i = 0; i < a.size(); ++i) w *= abs_ratio(b[i], a[i]);
  return w;
}

SlopeCycle SlopeCycle::reversed() const {
  // Crossing c_m^{-1}, ..., c_1^{-1}: order reverses and each pair swaps.
  return SlopeCycle{{b.rbegin(), b.rend()}, {a.rbegin(), a.rend()}};
}

SlopeCycle SlopeCycle::normalized() const { return dilation() >= 1 ? *this : reversed(); }

SlopeCycle slope_cycle(const GainGraph& g, const Walk& closed_walk) {
  if (!g.is_closed(closed_walk)) throw WalkError("slope cycle needs a closed walk");
  if (closed_walk.crossings.empty()) throw WalkError("closed walk crosses no curve");
  SlopeCycle s;
  for (const auto& x : closed_walk.crossings) {
    auto [a, b] = g.slope(x);
    s.a.push_back(a);
    s.b.push_back(b);
  }
  return s;
}

Walk orient_cycle(const GainGraph& g, const Walk& closed_walk) {
  return dilation_of_walk(g, closed_walk) >= 1 ? closed_walk : inverse(closed_walk, g);
}

Window governor_window(const SlopeCycle& slopes, const Integer& A, const Integer& previous_t, std::size_t j) {
  const Integer prev = abs(previous_t * as_int(slopes.b_at(j - 1)));
  const Integer den = abs_int(slopes.a_at(j));
  return {Rational(1 + prev, den), Rational(A + prev, den)};
}

SpiralSequence build_sequence(const SlopeCycle& slopes, const Integer& mu, std::size_t n_periods) {
  require_slopes(slopes);
  if (mu < 1) throw std::invalid_argument("mu must be a positive integer");

  SpiralSequence seq;
  seq.slopes = slopes;
  seq.mu = mu;
  seq.n_periods = n_periods;
  seq.w = slopes.dilation();
  if (seq.w < 1) throw std::invalid_argument("slope cycle has dilation < 1; reverse it first");
  seq.A = compute_A(slopes);
  seq.xi = compute_xi(slopes);
  seq.lambda = compute_lambda(slopes);

  const std::size_t m = slopes.period();
  const std::size_t length = n_periods * m + 1;
  seq.t.reserve(length);
  seq.t.push_back(ceil(Rational(mu) / pow(seq.lambda, static_cast<unsigned long>(m - 1))));

  for (std::size_t j = 2; j <= length; ++j) {
    const Integer& prev = seq.t.back();
    auto window = governor_window(slopes, seq.A, prev, j);
    Integer magnitude = ceil(window.lo);
    if (magnitude > window.hi) {
      throw std::logic_error("empty governor window at j=" + std::to_string(j));
    }
    // opposite signs for t(j)a_j and t(j-1)b_{j-1}
    const int prev_sign = sgn(prev) * (slopes.b_at(j - 1) < 0 ? -1 : 1);
    const int a_sign = slopes.a_at(j) < 0 ? -1 : 1;
    seq.t.push_back(magnitude * (-prev_sign * a_sign));
  }
  return seq;
}

const char* to_string(CheckKind k) {
  switch (k) {
    case CheckKind::Parameters: return "parameters";
    case CheckKind::LowerBound: return "lower-bound";
    case CheckKind::Cancellation: return "cancellation";
    case CheckKind::Window: return "window";
    case CheckKind::SignAlternation: return "sign-alternation";
    case CheckKind::OneCycle: return "one-cycle";
    case CheckKind::Ultimate: return "ultimate";
  }
  return "?";
}

bool Certificate::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* Certificate::first_failure() const {
  auto it = std::find_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; });
  return it == checks.end() ? nullptr : &*it;
}

std::size_t Certificate::count(CheckKind k) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.kind == k; }));
}

Certificate verify_sequence(const SpiralSequence& seq) {
  Certificate cert;
  auto add = [&](CheckKind kind, std::size_t j, Rational margin, std::string detail) {
    const bool passed = margin >= 0;
    cert.checks.push_back({kind, j, std::move(margin), passed, std::move(detail)});
  };
  auto add_flag = [&](CheckKind kind, std::size_t j, bool passed, std::string detail) {
    cert.checks.push_back({kind, j, Rational(passed ? 0 : -1), passed, std::move(detail)});
  };

  const auto& s = seq.slopes;
  require_slopes(s);
  const std::size_t m = s.period();
  const std::size_t N = seq.length();
  const Rational w = s.dilation();
  const Integer A = compute_A(s);
  const Rational xi = compute_xi(s);

  add_flag(CheckKind::Parameters, 0, seq.A == A, "A = max(1+|a_i|) = " + to_string(A));
  add_flag(CheckKind::Parameters, 0, seq.xi == xi, "xi = min|1/a_i| = " + to_string(xi));
  add_flag(CheckKind::Parameters, 0, seq.w == w && w >= 1, "w = " + to_string(w) + " >= 1");
  {
    bool lambda_ok = seq.lambda > 0 && seq.lambda <= 1;
    for (std::size_t j = 2; j <= m + 1; ++j) lambda_ok = lambda_ok && seq.lambda <= abs_ratio(s.b_at(j - 1), s.a_at(j));
    add_flag(CheckKind::Parameters, 0, lambda_ok, "lambda = " + to_string(seq.lambda) + " in (0,1], <= |b_{j-1}/a_j|");
  }

  for (std::size_t j = 1; j <= N; ++j) {
    add(CheckKind::LowerBound, j, Rational(abs(seq.t_at(j)) - seq.mu), "|t(j)| >= mu");
  }
  for (std::size_t j = 2; j <= N; ++j) {
    const Integer ra = seq.t_at(j) * as_int(s.a_at(j));
    const Integer sb = seq.t_at(j - 1) * as_int(s.b_at(j - 1));
    add(CheckKind::Cancellation, j, Rational(A - abs(ra + sb)), "|t(j)a_j + t(j-1)b_{j-1}| <= A");
    const Integer diff = abs(ra) - abs(sb);
    add(CheckKind::Window, j, Rational(std::min(Integer(diff - 1), Integer(A - diff))),
        "1 <= |t(j)a_j| - |t(j-1)b_{j-1}| <= A");
    add_flag(CheckKind::SignAlternation, j, sgn(ra) * sgn(sb) < 0, "t(j)a_j and t(j-1)b_{j-1} of opposite signs");
  }
  for (std::size_t j = m + 1; j <= N; ++j) {
    add(CheckKind::OneCycle, j, Rational(abs(seq.t_at(j))) - (xi + w * abs(seq.t_at(j - m))),
        "|t(j)| >= xi + w|t(j-m)|");
  }
  for (std::size_t k = 1; k * m + 1 <= N; ++k) {
    const Rational rhs = xi * static_cast<unsigned long>(k) + Rational(abs(seq.t_at(1))) * pow(w, k);
    add(CheckKind::Ultimate, k * m + 1, Rational(abs(seq.t_at(k * m + 1))) - rhs, "|t(km+1)| >= xi k + |t(1)| w^k");
  }
  return cert;
}

std::vector<Integer> partial_sums(const SpiralSequence& seq) {
  const std::size_t m = seq.slopes.period();
  std::vector<Integer> out;
  Integer running = 0;
  for (std::size_t j = 1; j <= seq.length(); ++j) {
    running += abs(seq.t_at(j));
    if (j % m == 0) out.push_back(running);
  }
  return out;
}

std::string sequence_csv(const SpiralSequence& seq) {
  const auto& s = seq.slopes;
  const std::size_t m = s.period();
  std::string out = csv::row({"j", "t", "a", "b", "window_lo", "window_lo_decimal", "window_hi", "window_hi_decimal",
                              "window_diff", "cancellation", "one_cycle_margin", "one_cycle_margin_decimal",
                              "ultimate_margin", "ultimate_margin_decimal"});
  for (std::size_t j = 1; j <= seq.length(); ++j) {
    std::vector<std::string> row{std::to_string(j), to_string(seq.t_at(j)), std::to_string(s.a_at(j)),
                                 std::to_string(s.b_at(j))};
    if (j > 1) {
      auto win = governor_window(s, seq.A, seq.t_at(j - 1), j);
      const Integer ra = seq.t_at(j) * as_int(s.a_at(j));
      const Integer sb = seq.t_at(j - 1) * as_int(s.b_at(j - 1));
      row.insert(row.end(), {to_string(win.lo), to_decimal(win.lo), to_string(win.hi), to_decimal(win.hi),
                             to_string(Integer(abs(ra) - abs(sb))), to_string(Integer(abs(ra + sb)))});
    } else {
      row.insert(row.end(), {"", "", "", "", "", ""});
    }
    if (j > m) {
      Rational margin = Rational(abs(seq.t_at(j))) - (seq.xi + seq.w * abs(seq.t_at(j - m)));
      row.insert(row.end(), {to_string(margin), to_decimal(margin)});
    } else {
      row.insert(row.end(), {"", ""});
    }
    if (j > 1 && (j - 1) % m == 0) {
      const std::size_t k = (j - 1) / m;
      Rational margin = Rational(abs(seq.t_at(j))) -
                        (seq.xi * static_cast<unsigned long>(k) + Rational(abs(seq.t_at(1))) * pow(seq.w, k));
      row.insert(row.end(), {to_string(margin), to_decimal(margin)});
    } else {
      row.insert(row.end(), {"", ""});
    }
    out += csv::row(row);
  }
  return out;
}

std::size_t SpiralWord::exponent_block_count() const {
  return static_cast<std::size_t>(std::count_if(letters.begin(), letters.end(), [](const SpiralLetter& l) {
    return std::holds_alternative<PowerLetter>(l);
  }));
}

std::vector<Integer> SpiralWord::exponents() const {
  std::vector<Integer> out;
  for (const auto& l : letters) {
    if (auto p = std::get_if<PowerLetter>(&l)) out.push_back(p->exponent);
  }
  return out;
}

std::string SpiralWord::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out << ' ';
    if (auto p = std::get_if<PowerLetter>(&letters[i])) {
      out << p->curve << '^' << p->exponent.get_str();
    } else {
      const auto& c = std::get<ConnectorLetter>(letters[i]);
      out << "g" << c.index << '[' << c.block << ']' << (c.inverted ? "^-1" : "");
    }
  }
  return out.str();
}

SpiralPair spiral_words(const SpiralSequence& seq, const GainGraph& g, const Walk& cycle, std::size_t n,
                        const Rational& r) {
  const std::size_t m = seq.slopes.period();
  if (cycle.crossings.size() != m) {
    throw std::invalid_argument("period mismatch: sequence has m=" + std::to_string(m) + ", cycle has " +
                                std::to_string(cycle.crossings.size()) + " crossings");
  }
  if (slope_cycle(g, cycle) != seq.slopes)
    throw std::invalid_argument("cycle slopes differ from the sequence's slopes");
  if (n == 0 || n * m > seq.length()) throw std::invalid_argument("spiral index n out of range for this sequence");
  if (r < 0) throw std::invalid_argument("minimum curve length r must be non-negative");

  auto curve_at = [&](std::size_t j) { return g.curve_id(cycle.crossings[(j - 1) % m].curve); };
  auto block_at = [&](std::size_t j) { return g.block_id(g.target(cycle.crossings[(j - 1) % m])); };

  SpiralPair out;
  Integer total = 0;
  for (std::size_t j = 1; j <= n * m; ++j) {
    out.sigma.letters.push_back(PowerLetter{curve_at(j), seq.t_at(j), j});
    out.sigma.letters.push_back(ConnectorLetter{block_at(j), j, false});
    total += abs(seq.t_at(j));
  }
  out.sigma.length_lower_bound = r * total;

  out.rho.doubled = true;
  out.rho.letters = out.sigma.letters;
  out.rho.letters.push_back(PowerLetter{curve_at(n * m + 1), seq.t_at(1), 0});
  for (std::size_t j = n * m; j >= 1; --j) {
    out.rho.letters.push_back(ConnectorLetter{block_at(j), j, true});
    out.rho.letters.push_back(PowerLetter{curve_at(j), Integer(-seq.t_at(j)), j});
  }
  out.rho.length_lower_bound = r * (2 * total + abs(seq.t_at(1)));
  return out;
}

}  // namespace gmdist
