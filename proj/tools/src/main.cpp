#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "flagcurv/cli/commands.hpp"

namespace fc = flagcurv;
namespace cli = flagcurv::cli;

namespace {

cli::Format parse_format(const std::string& s) { return s == "json" ? cli::Format::Json : cli::Format::Table; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature invariants of invariant Randers metrics on Lie groups and homogeneous spaces"};
  app.set_version_flag("--version", cli::kToolVersion);
  app.require_subcommand(1);

  std::string file, format = "table", y_csv, u_csv, predicate, x_csv;
  int n = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  double k = 0.0;
  int samples = 1000;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", file, "problem file (JSON)")->required();
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"table", "json"}));
  };

  auto* validate = app.add_subcommand("validate", "load a problem file and report every validation defect");
  add_common(validate);

  auto* flag = app.add_subcommand("flag", "flag curvature of span{Y,U} with pole Y");
  add_common(flag);
  flag->add_option("--y", y_csv, "pole, comma-separated")->required();
  flag->add_option("--u", u_csv, "transverse vector, comma-separated")->required();

  auto* scan = app.add_subcommand("scan", "oracle flag curvature over seeded random flags");
  add_common(scan);
  scan->add_option("--n", n, "number of flags")->required()->check(CLI::PositiveNumber);
  scan->add_option("--seed", seed, "random seed")->required();
  scan->add_option("--threads", threads, "worker threads (0: all cores)");

  auto* check = app.add_subcommand("check", "evaluate a classification predicate");
  add_common(check);
  check->add_option("predicate", predicate, "berwald|perfect|ys-positive|ys-negative|ys-zero|milnor|constant")
      ->required();
  auto* k_opt = check->add_option("--k", k, "curvature constant for ys-positive / ys-negative");
  auto* x_opt = check->add_option("--x", x_csv, "direction for milnor (default: the drift)");
  check->add_option("--samples", samples, "samples for milnor / constant")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "random seed for milnor / constant");

  auto* compare = app.add_subcommand("compare", "closed-form formulas against the oracle over seeded flags");
  add_common(compare);
  compare->add_option("--n", n, "number of flags")->required()->check(CLI::PositiveNumber);
  compare->add_option("--seed", seed, "random seed")->required();
  compare->add_option("--threads", threads, "worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const cli::Problem p = cli::load(file);
    const cli::Format fmt = parse_format(format);
    std::string out;
    if (*validate) {
      out = cli::cmd_validate(p, fmt);
    } else if (*flag) {
      const int d = p.space().dim();
      out = cli::cmd_flag(p, cli::parse_csv_vector(y_csv, d), cli::parse_csv_vector(u_csv, d), fmt);
    } else if (*scan) {
      out = cli::cmd_scan(p, n, seed, fmt, threads);
    } else if (*check) {
      cli::CheckOptions opts;
      if (*k_opt) opts.k = k;
      if (*x_opt) opts.x = cli::parse_csv_vector(x_csv, p.space().dim());
      opts.samples = samples;
      opts.seed = seed;
      out = cli::cmd_check(p, predicate, opts, fmt);
    } else if (*compare) {
      out = cli::cmd_compare(p, n, seed, fmt, threads);
    }
    std::cout << out;
    return 0;
  } catch (const fc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
