#include "cym/harness/scenario.hpp"
#include "cym/harness/suites.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace cym;
using namespace cym::harness;

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

void print_summary(const Report& r) {
  for (const auto& c : r.checks) {
    std::printf("%-4s %-48s residual %-12.4g %s %-10.3g", c.pass ? "ok" : "FAIL", c.name.c_str(), c.residual,
                c.lower_bound ? "min" : "tol", c.tolerance);
    if (!c.note.empty()) std::printf("  (%s)", c.note.c_str());
    std::printf("\n");
  }
  std::printf("%s: %s\n", r.scenario.c_str(), r.pass ? "PASS" : "FAIL");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cym: curved Yang-Mills verification harness"};
  app.require_subcommand(1);
  // -h would collide with the --h step option
  app.set_help_flag("--help", "print this help and exit");

  std::string scenario, suite = "all", report_path, csv_path;
  LoadOptions load;
  RunOptions run;
  bool quiet = false;
  auto* verify = app.add_subcommand("verify", "run a verification suite on a scenario");
  verify->add_option("--scenario", scenario, "built-in name or scenario JSON path")->required();
  verify->add_option("--suite", suite, "suite name or 'all'");
  verify->add_option("--points", load.points, "number of sample points");
  verify->add_option("--seed", load.seed, "sampling seed");
  verify->add_option("--h", load.h, "first-level difference step");
  verify->add_option("--h2", load.h2, "nested difference step");
  verify->add_option("--tol-scale", run.tol_scale, "multiply every upper-bound tolerance");
  verify->add_option("--report", report_path, "write the JSON report here");
  verify->add_option("--csv", csv_path, "write per-sample residuals here");
  verify->add_flag("--zero-zeta", load.zero_zeta, "replace ζ by zero");
  verify->add_flag("--quiet", quiet, "no per-check output");

  std::string dump_name, dump_out;
  auto* dump = app.add_subcommand("dump-scenario", "print the canonical JSON of a scenario");
  dump->add_option("scenario", dump_name, "built-in name or scenario JSON path")->required();
  dump->add_option("-o,--output", dump_out, "output path");

  auto* list = app.add_subcommand("list", "list built-in scenarios and suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      std::printf("scenarios:\n");
      for (const auto& n : builtin_names()) std::printf("  %s\n", n.c_str());
      std::printf("suites:\n");
      for (const auto& n : suite_names()) std::printf("  %-20s %s\n", n.c_str(), suite_anchor(n).c_str());
      return 0;
    }
    if (*dump) {
      const Scenario s = resolve_scenario(dump_name);
      const std::string text = s.source.dump(2) + "\n";
      if (dump_out.empty())
        std::cout << text;
      else
        write_file(dump_out, text);
      return 0;
    }
    if (run.tol_scale <= 0.0) throw InputError("--tol-scale must be positive");
    if (load.points && *load.points < 1) throw InputError("--points must be positive");
    if ((load.h && *load.h <= 0.0) || (load.h2 && *load.h2 <= 0.0)) throw InputError("--h and --h2 must be positive");
    const Scenario s = resolve_scenario(scenario, load);
    const Report r = run_suite(s, suite, run);
    if (!quiet) print_summary(r);
    if (!report_path.empty()) write_file(report_path, report_json(r).dump(2) + "\n");
    if (!csv_path.empty()) write_file(csv_path, report_csv(r));
    return r.pass ? 0 : 1;
  } catch (const InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
