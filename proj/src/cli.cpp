#include "gmdist/cli.hpp"

#include "gmdist/csv.hpp"
#include "gmdist/dilation.hpp"
#include "gmdist/geometry.hpp"
#include "gmdist/instance_io.hpp"
#include "gmdist/models.hpp"
#include "gmdist/probe.hpp"
#include "gmdist/spiral.hpp"

#include <fstream>
#include <ostream>

namespace gmdist::cli {

namespace {

// Exit code carried out of the helpers below.
struct Exit {
  int code;
};

Instance load_valid(const std::filesystem::path& path, std::ostream& err) {
  Instance inst;
  try {
    inst = load_instance(path);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    throw Exit{kExitInput};
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    throw Exit{kExitInput};
  }
  auto vm = validate_manifold(inst.manifold);
  auto vs = validate_surface(inst.manifold, inst.surface);
  if (!vm.ok() || !vs.ok()) {
    for (const auto* r : {&vm, &vs}) {
      for (const auto& v : r->violations) err << "violation: " << to_string(v.kind) << ": " << v.message << "\n";
    }
    throw Exit{kExitDomain};
  }
  return inst;
}

GeometryParams resolve_params(const Instance& inst, const Options& opts, std::ostream& err) {
  if (opts.params) {
    try {
      return parse_params_list(*opts.params);
    } catch (const std::invalid_argument& e) {
      err << "error: --params: " << e.what() << "\n";
      throw Exit{kExitInput};
    }
  }
  return inst.params.value_or(GeometryParams{});
}

template <typename T>
T pick(const std::optional<T>& flag, const std::optional<ProbeSection>& probe, std::optional<T> ProbeSection::*field,
       T fallback) {
  if (flag) return *flag;
  if (probe && (*probe).*field) return *((*probe).*field);
  return fallback;
}

// The --cycle walk, the [probe] cycle, or the auto-selected one; oriented so
// its dilation is >= 1.
Walk resolve_cycle(const GainGraph& g, const Instance& inst, const Options& opts, std::ostream& err) {
  std::optional<std::string> text = opts.cycle;
  if (!text && inst.probe) text = inst.probe->cycle;
  if (!text) {
    auto c = select_cycle(g);
    if (!c) {
      err << "error: no closed walk crosses T_g at graph level\n";
      throw Exit{kExitDomain};
    }
    return *c;
  }
  try {
    Walk w = g.parse_walk(*text);
    if (!g.is_closed(w)) {
      err << "error: cycle '" << *text << "' is not a closed walk\n";
      throw Exit{kExitDomain};
    }
    return orient_cycle(g, w);
  } catch (const WalkError& e) {
    err << "error: cycle '" << *text << "': " << e.what() << "\n";
    throw Exit{kExitDomain};
  }
}

// Writes CSV to --csv when given, otherwise to `out`.
void emit_csv(const std::string& csv, const Options& opts, std::ostream& out, std::ostream& err) {
  if (!opts.csv) {
    out << csv;
    return;
  }
  std::ofstream f(*opts.csv);
  if (!f || !(f << csv)) {
    err << "error: cannot write " << opts.csv->string() << "\n";
    throw Exit{kExitInput};
  }
}

template <typename Fn>
int guarded(std::ostream& err, Fn fn) {
  try {
    return fn();
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace

int cmd_check(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto inst = load_valid(path, err);
    out << "ok: " << inst.manifold.pieces.size() << " pieces, " << inst.manifold.edges.size() << " JSJ edges, "
        << inst.surface.blocks.size() << " blocks, " << inst.surface.curves.size() << " curves\n";
    return kExitOk;
  });
}

int cmd_classify(const std::filesystem::path& path, const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto inst = load_valid(path, err);
    GainGraph g(inst.surface);
    auto report = make_report(g);
    out << render_text(report, g);
    if (opts.csv) emit_csv(render_csv(report, g), opts, out, err);
    return kExitOk;
  });
}

int cmd_spiral(const std::filesystem::path& path, const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto inst = load_valid(path, err);
    GainGraph g(inst.surface);
    const Walk cycle = resolve_cycle(g, inst, opts, err);
    const Integer mu = pick(opts.mu, inst.probe, &ProbeSection::mu, Integer(1));
    const std::size_t periods = pick(opts.periods, inst.probe, &ProbeSection::periods, kDefaultPeriods);
    if (mu < 1) {
      err << "error: --mu must be >= 1\n";
      return kExitInput;
    }
    const auto seq = build_sequence(slope_cycle(g, cycle), mu, periods);
    const auto cert = verify_sequence(seq);
    emit_csv(sequence_csv(seq), opts, out, err);
    out << "cycle: " << g.format(cycle) << " (w=" << to_string(seq.w) << ", A=" << to_string(seq.A) << ")\n";
    for (auto k : {CheckKind::Parameters, CheckKind::LowerBound, CheckKind::Cancellation, CheckKind::Window,
                   CheckKind::SignAlternation, CheckKind::OneCycle, CheckKind::Ultimate}) {
      std::size_t failed = 0;
      for (const auto& c : cert.checks) failed += (c.kind == k && !c.passed);
      out << "check " << to_string(k) << ": " << (failed ? "FAIL" : "PASS") << " (" << cert.count(k) << " checked)\n";
    }
    if (const auto* f = cert.first_failure()) {
      out << "certificate: FAIL at j=" << f->j << ": " << f->detail << "\n";
      return kExitDomain;
    }
    out << "certificate: PASS\n";
    return kExitOk;
  });
}

int cmd_probe(const std::filesystem::path& path, const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto inst = load_valid(path, err);
    GainGraph g(inst.surface);
    const Walk cycle = resolve_cycle(g, inst, opts, err);
    const auto params = resolve_params(inst, opts, err);
    ProbeParams pp;
    pp.mu = pick(opts.mu, inst.probe, &ProbeSection::mu, Integer(1));
    pp.n_max = pick(opts.nmax, inst.probe, &ProbeSection::nmax, kDefaultNmax);
    pp.eta = params.eta;
    pp.R = params.R;
    pp.r = params.r;
    const auto table = distortion_probe(g, cycle, pp);
    emit_csv(growth_csv(table), opts, out, err);
    out << "cycle: " << g.format(table.cycle) << " (w=" << to_string(table.w) << ")\n";
    out << verdict_line(table) << "\n";
    if (!table.consistent()) {
      err << "contradiction: probe verdict " << to_string(table.verdict) << " but dilation class is "
          << to_string(table.expected) << "\n";
      return kExitDomain;
    }
    return kExitOk;
  });
}

int cmd_envelope(const std::filesystem::path& path, const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto inst = load_valid(path, err);
    GainGraph g(inst.surface);
    const Walk cycle = resolve_cycle(g, inst, opts, err);
    const auto params = resolve_params(inst, opts, err);
    const std::size_t periods = pick(opts.periods, inst.probe, &ProbeSection::periods, kDefaultPeriods);
    Walk path_walk{cycle.start, {}};
    for (std::size_t p = 0; p < periods; ++p) path_walk = concatenate(path_walk, cycle);
    if (path_walk.crossings.empty()) {
      err << "error: --periods must be >= 1\n";
      return kExitInput;
    }
    const std::vector<Rational> legs(path_walk.crossings.size(), params.rho);
    const auto trace = upper_envelope(g, path_walk, legs, params.L, params.rho);
    const auto check = certify_envelope(trace);

    std::string table = csv::row({"j", "leg", "d_left", "d_right", "claim2", "claim3", "d_right_decimal"});
    for (std::size_t j = 1; j <= trace.crossings(); ++j) {
      table += csv::row({std::to_string(j), to_string(trace.legs[j - 1]), to_string(trace.d_left[j - 1]),
                         to_string(trace.d_right[j - 1]), to_string(trace.claim2[j - 1]),
                         trace.Lambda ? to_string(trace.claim3[j - 1]) : "", to_decimal(trace.d_right[j - 1])});
    }
    emit_csv(table, opts, out, err);
    out << "n=" << to_string(trace.n) << ", ε=" << to_string(trace.epsilon);
    if (trace.Lambda) out << ", Λ=" << to_string(*trace.Lambda);
    out << "\n";
    out << "recursion: " << (check.recursion_ok ? "PASS" : "FAIL") << "\n";
    out << "claim2: " << (check.claim2_ok ? "PASS" : "FAIL") << "\n";
    if (trace.Lambda) {
      out << "claim3: " << (check.claim3_ok ? "PASS" : "FAIL") << "\n";
      out << "sum: " << (check.sum_ok ? "PASS" : "FAIL") << "\n";
    }
    out << "envelope: " << (check.ok() ? "PASS" : "FAIL") << "\n";
    return check.ok() ? kExitOk : kExitDomain;
  });
}

}  // namespace gmdist::cli
