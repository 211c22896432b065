#include "gmdist/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace gmdist::cli;
  CLI::App app{"Graph manifold horizontal surfaces: dilation, spirals and distortion probes"};
  app.require_subcommand(1);

  std::string path;
  Options opts;
  std::string mu;
  std::string csv;

  auto add_common = [&](CLI::App* sub) { sub->add_option("instance", path, "instance file")->required(); };
  auto add_mu = [&](CLI::App* sub) { sub->add_option("--mu", mu, "lower bound for |t(j)| (positive integer)"); };
  auto add_cycle = [&](CLI::App* sub) {
    sub->add_option("--cycle", opts.cycle, "closed walk as curve ids, '-' crosses backward (e.g. c1,-c2)");
  };
  auto add_csv = [&](CLI::App* sub) { sub->add_option("--csv", csv, "write the CSV table to this path"); };
  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--params", opts.params, "geometry constants L,Lp,rho,eta,R,r");
  };

  auto* check = app.add_subcommand("check", "validate an instance");
  add_common(check);

  auto* classify = app.add_subcommand("classify", "dilation report and distortion class");
  add_common(classify);
  add_csv(classify);

  auto* spiral = app.add_subcommand("spiral", "build and certify the spiral sequence");
  add_common(spiral);
  add_mu(spiral);
  spiral->add_option("--periods", opts.periods, "number of cycle periods");
  add_cycle(spiral);
  add_csv(spiral);

  auto* probe = app.add_subcommand("probe", "growth table and fitted verdict");
  add_common(probe);
  add_mu(probe);
  probe->add_option("--nmax", opts.nmax, "largest n in the growth table (>= 4)");
  add_cycle(probe);
  add_csv(probe);
  add_params(probe);

  auto* envelope = app.add_subcommand("envelope", "certify the upper-bound distance recursion");
  add_common(envelope);
  envelope->add_option("--periods", opts.periods, "number of cycle periods in the path");
  add_cycle(envelope);
  add_csv(envelope);
  add_params(envelope);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  if (!mu.empty()) {
    try {
      opts.mu = gmdist::Integer(mu);
    } catch (const std::invalid_argument&) {
      std::cerr << "error: --mu expects an integer\n";
      return kExitInput;
    }
  }
  if (!csv.empty()) opts.csv = csv;

  if (check->parsed()) return cmd_check(path, std::cout, std::cerr);
  if (classify->parsed()) return cmd_classify(path, opts, std::cout, std::cerr);
  if (spiral->parsed()) return cmd_spiral(path, opts, std::cout, std::cerr);
  if (probe->parsed()) return cmd_probe(path, opts, std::cout, std::cerr);
  return cmd_envelope(path, opts, std::cout, std::cerr);
}
