#include "gmdist/probe.hpp"

#include "gmdist/csv.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace gmdist {

namespace {

bool cancels(Crossing x, Crossing y) { return x.curve == y.curve && x.forward != y.forward; }

// Ordinary least squares y ~ intercept + slope * x.
std::pair<double, double> least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  const double slope = denom == 0 ? 0 : (n * sxy - sx * sy) / denom;
  return {(sy - slope * sx) / n, slope};
}

}  // namespace

Walk cyclically_reduce(const Walk& closed_walk, const GainGraph& g) {
  if (!g.is_closed(closed_walk)) throw WalkError("cyclically_reduce: walk is not closed");
  std::vector<Crossing> stack;
  for (const auto& x : closed_walk.crossings) {
    if (!stack.empty() && cancels(stack.back(), x)) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  }
  std::size_t lo = 0, hi = stack.size();
  while (hi - lo >= 2 && cancels(stack[lo], stack[hi - 1])) {
    ++lo;
    --hi;
  }
  if (lo == hi) {
    return Walk{closed_walk.start, {}};
  }
  Walk out{g.source(stack[lo]),
           {stack.begin() + static_cast<std::ptrdiff_t>(lo), stack.begin() + static_cast<std::ptrdiff_t>(hi)}};
  return out;
}

std::optional<Walk> select_cycle(const GainGraph& g) {
  const auto cycles = cycle_basis_gains(g);
  const bool balanced = std::all_of(cycles.begin(), cycles.end(), [](const CycleGain& c) { return c.gain == 1; });
  const CycleGain* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& c : cycles) {
    if (!balanced && c.gain == 1) continue;
    Walk reduced = cyclically_reduce(c.cycle, g);
    if (!best || reduced.crossings.size() < best_len) {
      best = &c;
      best_len = reduced.crossings.size();
    }
  }
  if (!best) return std::nullopt;
  return orient_cycle(g, cyclically_reduce(best->cycle, g));
}

GrowthFit fit_growth(std::span<const GrowthRow> rows) {
  if (rows.size() < 4) throw std::invalid_argument("fit_growth: need at least 4 rows");
  const std::size_t start = rows.size() / 2;
  GrowthFit fit;
  fit.first_n = rows[start].n;

  std::vector<double> ns, log_lower, n_sq, lower, log_n, log_inc;
  for (std::size_t i = start; i < rows.size(); ++i) {
    const double n = static_cast<double>(rows[i].n);
    ns.push_back(n);
    log_lower.push_back(log_of(rows[i].lower));
    n_sq.push_back(n * n);
    lower.push_back(rows[i].lower.get_d());
    const Rational inc = rows[i].lower - rows[i - 1].lower;
    if (inc > 0) {
      log_n.push_back(std::log(n));
      log_inc.push_back(log_of(inc));
    }
  }
  fit.exp_base = std::exp(least_squares(ns, log_lower).second);
  std::tie(fit.quad_intercept, fit.quad_coef) = least_squares(n_sq, lower);
  fit.increment_exponent = log_n.size() >= 2 ? least_squares(log_n, log_inc).second : 0.0;
  return fit;
}

DistortionClass growth_verdict(const GrowthFit& fit) {
  return fit.increment_exponent > kExponentialIncrementExponent ? DistortionClass::Exponential
                                                                : DistortionClass::Quadratic;
}

GrowthTable distortion_probe(const GainGraph& g, const Walk& cycle, const ProbeParams& params) {
  if (params.n_max < 4) throw std::invalid_argument("distortion_probe: n_max must be >= 4");
  if (params.r <= 0) throw std::invalid_argument("distortion_probe: r must be positive");

  GrowthTable table;
  table.cycle = orient_cycle(g, cycle);
  table.slopes = slope_cycle(g, table.cycle);
  table.w = table.slopes.dilation();
  if (table.w < 1) throw std::logic_error("distortion_probe: oriented cycle has dilation < 1");

  const auto seq = build_sequence(table.slopes, params.mu, params.n_max);
  const auto f = partial_sums(seq);
  const auto chain = corner_chain(seq, params.eta, params.R);
  for (std::size_t n = 1; n <= params.n_max; ++n) {
    table.rows.push_back(
        {n, f[n - 1], 2 * params.r * Rational(f[n - 1]), chain.chain_length(n), chain.linear_bound(n)});
  }
  table.fit = fit_growth(table.rows);
  table.verdict = growth_verdict(table.fit);
  table.expected = distortion_class(g);
  return table;
}

std::string verdict_line(const GrowthTable& table) {
  if (table.verdict == DistortionClass::Quadratic) return "QUADRATIC";
  std::ostringstream out;
  out << "EXPONENTIAL (base ≈ " << std::setprecision(6) << table.fit.exp_base << ")";
  return out.str();
}

std::string growth_csv(const GrowthTable& table) {
  std::ostringstream param;
  const bool exp = table.verdict == DistortionClass::Exponential;
  param << std::setprecision(10) << (exp ? table.fit.exp_base : table.fit.quad_coef);
  std::string out = csv::row({"n", "f_n", "lower_bound", "upper_bound", "fit_kind", "fit_param", "chain_length",
                              "lower_bound_decimal", "upper_bound_decimal"});
  for (const auto& row : table.rows) {
    out += csv::row({std::to_string(row.n), to_string(row.f), to_string(row.lower), to_string(row.upper),
                     exp ? "exponential" : "quadratic", param.str(), to_string(row.chain), to_decimal(row.lower),
                     to_decimal(row.upper)});
  }
  return out;
}

}  // namespace gmdist
