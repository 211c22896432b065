#include "gmdist/dilation.hpp"

#include "gmdist/csv.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace gmdist {

GainGraph::GainGraph(const HorizontalSurface& s) : curves_(s.curves) {
  for (const auto& b : s.blocks) block_ids_.push_back(b.id);
  std::sort(block_ids_.begin(), block_ids_.end());
  std::sort(curves_.begin(), curves_.end(), [](const Curve& x, const Curve& y) { return x.id < y.id; });

  leaving_.resize(block_ids_.size());
  for (std::size_t c = 0; c < curves_.size(); ++c) {
    auto t = find_block(curves_[c].tail_block);
    auto h = find_block(curves_[c].head_block);
    if (!t || !h) throw WalkError("curve " + curves_[c].id + " references an unknown block");
    tails_.push_back(*t);
    heads_.push_back(*h);
  }
  for (std::size_t c = 0; c < curves_.size(); ++c) {
    leaving_[tails_[c]].push_back({c, true});
    leaving_[heads_[c]].push_back({c, false});
  }
}

std::optional<std::size_t> GainGraph::find_block(std::string_view id) const {
  auto it = std::lower_bound(block_ids_.begin(), block_ids_.end(), id);
  if (it == block_ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - block_ids_.begin());
}

std::optional<std::size_t> GainGraph::find_curve(std::string_view id) const {
  auto it = std::lower_bound(curves_.begin(), curves_.end(), id,
                             [](const Curve& c, std::string_view key) { return c.id < key; });
  if (it == curves_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - curves_.begin());
}

Rational GainGraph::gain(Crossing x) const {
  const auto& c = curves_.at(x.curve);
  if (c.a == 0 || c.b == 0) throw WalkError("curve " + c.id + " has a zero coefficient");
  return x.forward ? abs_ratio(c.b, c.a) : abs_ratio(c.a, c.b);
}

std::pair<std::int64_t, std::int64_t> GainGraph::slope(Crossing x) const {
  const auto& c = curves_.at(x.curve);
  return x.forward ? std::pair{c.a, c.b} : std::pair{c.b, c.a};
}

std::size_t GainGraph::end_of(const Walk& w) const {
  if (w.start >= block_count()) throw WalkError("walk starts at an unknown block");
  std::size_t at = w.start;
  for (std::size_t i = 0; i < w.crossings.size(); ++i) {
    const auto& x = w.crossings[i];
    if (x.curve >= curve_count()) throw WalkError("walk crosses an unknown curve");
    if (source(x) != at) {
      throw WalkError("crossing " + std::to_string(i + 1) + " (" + curve_id(x.curve) + ") does not start at block " +
                      block_id(at));
    }
    at = target(x);
  }
  return at;
}

Walk GainGraph::parse_walk(std::string_view text) const {
  Walk w;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    bool forward = true;
    if (!item.empty() && (item.front() == '-' || item.front() == '+')) {
      forward = item.front() == '+';
      item.remove_prefix(1);
    }
    auto c = find_curve(item);
    if (!c) throw WalkError("unknown curve '" + std::string(item) + "' in walk");
    w.crossings.push_back({*c, forward});
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (w.crossings.empty()) throw WalkError("empty walk");
  w.start = source(w.crossings.front());
  end_of(w);
  return w;
}

std::string GainGraph::format(const Walk& w) const {
  if (w.crossings.empty()) return "@" + block_id(w.start);
  std::string out;
  for (std::size_t i = 0; i < w.crossings.size(); ++i) {
    if (i) out += ',';
    if (!w.crossings[i].forward) out += '-';
    out += curve_id(w.crossings[i].curve);
  }
  return out;
}

Walk inverse(const Walk& w, const GainGraph& g) {
  Walk out{g.end_of(w), {}};
  for (auto it = w.crossings.rbegin(); it != w.crossings.rend(); ++it) {
    out.crossings.push_back({it->curve, !it->forward});
  }
  return out;
}

Walk concatenate(const Walk& u, const Walk& v) {
  Walk out = u;
  out.crossings.insert(out.crossings.end(), v.crossings.begin(), v.crossings.end());
  return out;
}

Rational dilation_of_walk(const GainGraph& g, const Walk& w) {
  g.end_of(w);
  Rational product = 1;
  for (const auto& x : w.crossings) product *= g.gain(x);
  return product;
}

namespace {

struct SpanningForest {
  std::vector<std::size_t> root;                    // component root per block
  std::vector<std::optional<Crossing>> parent;      // crossing entering the block
  std::vector<bool> tree_curve;
  std::vector<Rational> potential;                  // relative to the component root
};

SpanningForest spanning_forest(const GainGraph& g) {
  const std::size_t n = g.block_count();
  SpanningForest f{std::vector<std::size_t>(n), std::vector<std::optional<Crossing>>(n),
                   std::vector<bool>(g.curve_count(), false), std::vector<Rational>(n)};
  std::vector<bool> seen(n, false);
  for (std::size_t r = 0; r < n; ++r) {
    if (seen[r]) continue;
    seen[r] = true;
    f.root[r] = r;
    f.potential[r] = 1;
    std::deque<std::size_t> queue{r};
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (const auto& x : g.leaving(v)) {
        auto u = g.target(x);
        if (seen[u]) continue;
        seen[u] = true;
        f.root[u] = r;
        f.parent[u] = x;
        f.tree_curve[x.curve] = true;
        f.potential[u] = f.potential[v] * g.gain(x);
        queue.push_back(u);
      }
    }
  }
  return f;
}

Walk tree_path_from_root(const GainGraph& g, const SpanningForest& f, std::size_t v) {
  std::vector<Crossing> reversed;
  while (f.parent[v]) {
    reversed.push_back(*f.parent[v]);
    v = g.source(*f.parent[v]);
  }
  return Walk{v, {reversed.rbegin(), reversed.rend()}};
}

}  // namespace

std::vector<CycleGain> cycle_basis_gains(const GainGraph& g) {
  auto f = spanning_forest(g);
  std::vector<CycleGain> out;
  for (std::size_t c = 0; c < g.curve_count(); ++c) {
    if (f.tree_curve[c]) continue;
    const Crossing x{c, true};
    Walk to_tail = tree_path_from_root(g, f, g.tail(c));
    Walk to_head = tree_path_from_root(g, f, g.head(c));
    Walk cycle = concatenate(concatenate(to_tail, Walk{g.tail(c), {x}}), inverse(to_head, g));
    Rational gain = f.potential[g.tail(c)] * g.gain(x) / f.potential[g.head(c)];
    out.push_back({c, std::move(cycle), std::move(gain)});
  }
  return out;
}

bool is_virtually_embedded(const GainGraph& g) {
  auto cycles = cycle_basis_gains(g);
  return std::all_of(cycles.begin(), cycles.end(), [](const CycleGain& c) { return c.gain == 1; });
}

std::optional<std::vector<Rational>> vertex_potentials(const GainGraph& g) {
  auto f = spanning_forest(g);
  for (std::size_t c = 0; c < g.curve_count(); ++c) {
    if (f.potential[g.head(c)] != f.potential[g.tail(c)] * g.gain({c, true})) return std::nullopt;
  }
  return f.potential;
}

Rational governor(const GainGraph& g) {
  if (g.curve_count() == 0) throw std::invalid_argument("governor: surface has no curves");
  Rational eps = 1;
  for (std::size_t c = 0; c < g.curve_count(); ++c) {
    eps = std::max({eps, g.gain({c, true}), g.gain({c, false})});
  }
  return eps;
}

LambdaBounds lambda_bounds(const GainGraph& g) {
  LambdaBounds out{pow(governor(g), static_cast<unsigned long>(g.block_count())), std::nullopt};
  if (auto phi = vertex_potentials(g)) {
    auto [lo, hi] = std::minmax_element(phi->begin(), phi->end());
    out.exact = *hi / *lo;
  }
  return out;
}

const char* to_string(DistortionClass c) {
  return c == DistortionClass::Quadratic ? "Quadratic" : "Exponential";
}

DistortionClass distortion_class(const GainGraph& g) {
  return is_virtually_embedded(g) ? DistortionClass::Quadratic : DistortionClass::Exponential;
}

DilationReport make_report(const GainGraph& g) {
  DilationReport r;
  r.cycle_gains = cycle_basis_gains(g);
  r.balanced = std::all_of(r.cycle_gains.begin(), r.cycle_gains.end(), [](const CycleGain& c) { return c.gain == 1; });
  r.governor = governor(g);
  auto lambda = lambda_bounds(g);
  r.lambda_power_bound = lambda.power_bound;
  r.lambda_exact = lambda.exact;
  r.distortion_class = r.balanced ? DistortionClass::Quadratic : DistortionClass::Exponential;
  return r;
}

std::string summary_line(const DilationReport& r) {
  std::ostringstream out;
  out << to_string(r.distortion_class) << ", " << (r.balanced ? "balanced" : "unbalanced")
      << ", ε=" << to_string(r.governor);
  if (r.lambda_exact) {
    out << ", Λ=" << to_string(*r.lambda_exact);
  } else {
    for (const auto& c : r.cycle_gains) {
      if (c.gain != 1) {
        out << ", cycle gain " << to_string(c.gain);
        break;
      }
    }
  }
  return out.str();
}

std::string render_text(const DilationReport& r, const GainGraph& g) {
  std::ostringstream out;
  out << summary_line(r) << "\n";
  out << "distortion class: " << to_string(r.distortion_class) << "\n";
  out << "balanced: " << (r.balanced ? "yes" : "no") << "\n";
  out << "governor: " << to_string(r.governor) << " (" << to_decimal(r.governor) << ")\n";
  out << "lambda power bound: " << to_string(r.lambda_power_bound) << "\n";
  out << "lambda exact: " << (r.lambda_exact ? to_string(*r.lambda_exact) : std::string("none (unbalanced)")) << "\n";
  out << "cycle basis (" << r.cycle_gains.size() << "):\n";
  for (const auto& c : r.cycle_gains) {
    out << "  " << g.curve_id(c.generator) << ": " << g.format(c.cycle) << "  gain " << to_string(c.gain) << "\n";
  }
  return out.str();
}

std::string render_csv(const DilationReport& r, const GainGraph& g) {
  std::string out = csv::row({"cycle", "generator", "walk", "gain", "gain_decimal", "balanced", "governor",
                              "lambda_power_bound", "lambda_exact", "class"});
  for (std::size_t i = 0; i < r.cycle_gains.size(); ++i) {
    const auto& c = r.cycle_gains[i];
    out += csv::row({std::to_string(i + 1), g.curve_id(c.generator), g.format(c.cycle), to_string(c.gain),
                     to_decimal(c.gain), r.balanced ? "1" : "0", to_string(r.governor),
                     to_string(r.lambda_power_bound), r.lambda_exact ? to_string(*r.lambda_exact) : "",
                     to_string(r.distortion_class)});
  }
  return out;
}

}  // namespace gmdist
