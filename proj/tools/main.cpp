#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace szpiro::cli;

int main(int argc, char** argv) {
  CLI::App app{"Certify codimension-2 Gorenstein algebras from length-2 free resolutions"};
  app.require_subcommand(1);

  CommandOptions opts;
  std::uint64_t seed = 0;
  std::size_t max_spairs = 0;
  std::string json_out;
  std::string hints;
  std::string path;

  auto common = [&](CLI::App* sub, bool takes_file) {
    if (takes_file) sub->add_option("file", path, "problem file (JSON)")->required();
    sub->add_option("--seed", seed, "seed for randomized searches");
    sub->add_option("--max-spairs", max_spairs, "S-pair budget per Groebner computation");
    sub->add_option("--json-out", json_out, "also write the report to this file");
  };

  auto* diagnose = app.add_subcommand("diagnose", "run every stage and print the verdict");
  common(diagnose, true);
  auto* ring = app.add_subcommand("ring", "build and check the multiplication table");
  common(ring, true);
  auto* regularize = app.add_subcommand("regularize", "make det(alpha), det(beta) a regular sequence");
  common(regularize, true);
  regularize->add_option("--hints", hints, "comma-separated factors of det(alpha)");
  auto* symmetrize = app.add_subcommand("symmetrize", "put a resolution into symmetric form through u");
  common(symmetrize, true);
  auto* selftest = app.add_subcommand("selftest", "run the property suites");
  common(selftest, false);
  selftest->add_flag("--quick", opts.quick, "smaller suites");
  selftest->add_flag("--inject-fault", opts.inject_fault)->group("");
  auto* verify = app.add_subcommand("verify", "re-check the certificates of a report");
  verify->add_option("report", path, "report file (JSON)")->required();
  verify->add_option("--json-out", json_out, "also write the result to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  for (auto* sub : app.get_subcommands()) {
    if (auto* o = sub->get_option_no_throw("--seed"); o && o->count()) opts.seed = seed;
    if (auto* o = sub->get_option_no_throw("--max-spairs"); o && o->count()) opts.max_spairs = max_spairs;
  }
  if (!hints.empty()) {
    std::vector<std::string> list;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= hints.size(); ++i)
      if (i == hints.size() || hints[i] == ',') {
        list.push_back(hints.substr(start, i - start));
        start = i + 1;
      }
    opts.hints = list;
  }

  CommandResult result;
  try {
    if (*diagnose)
      result = run_diagnose(path, opts);
    else if (*ring)
      result = run_ring(path, opts);
    else if (*regularize)
      result = run_regularize(path, opts);
    else if (*symmetrize)
      result = run_symmetrize(path, opts);
    else if (*selftest)
      result = run_selftest(opts);
    else
      result = run_verify(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  const std::string text = result.report.dump(2);
  std::cout << text << "\n";
  if (!json_out.empty()) {
    std::ofstream out(json_out);
    if (!out) {
      std::cerr << "error: cannot write " << json_out << "\n";
      return kInputError;
    }
    out << text << "\n";
  }
  return result.exit_code;
}
