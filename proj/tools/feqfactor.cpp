#include "feqfactor.h"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct Args {
  std::string instance;
  std::string side = "K";
  std::string base;
  std::string tie_break = "first";
  long long enumerate_limit = 4096;
  std::string format = "text";
  std::string out;
  std::string function;
  std::string function_json;
  std::string restrict_path;
  std::string restrict_json;
};

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("instance", a.instance, "instance file (JSON)")->required();
  sub->add_option("--side", a.side, "side to work on: J, K, or both");
  sub->add_option("--base", a.base, "base element, e.g. 0 or 1/2");
  sub->add_option("--tie-break", a.tie_break, "quasi-inverse tie-break: first or last");
  sub->add_option("--enumerate-limit", a.enumerate_limit,
                  "cap on enumerated quasi-inverses (default 4096)");
  sub->add_option("--format", a.format, "report format: text or json");
  sub->add_option("--out", a.out, "write the report to this file instead of stdout");
  sub->add_option("--function", a.function, "F-function file");
  sub->add_option("--function-json", a.function_json, "inline F-function JSON");
  sub->add_option("--restrict", a.restrict_path, "domain-restriction file");
  sub->add_option("--restrict-json", a.restrict_json, "inline domain-restriction JSON");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"solver for the generalized associativity factorization problem on finite models"};
  app.set_version_flag("--version", std::string(feq_version()));
  app.require_subcommand(1);

  Args a;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"solve", "solution partition, block structure, and generator"},
      {"member", "test a supplied F for membership and recover the outer functions"},
      {"reduce", "build the one-variable reduction at a base point"},
      {"characterize", "search every base point on both sides for a characterization"},
      {"diagonal", "diagonal-section analysis of a power instance"},
      {"qinv", "quasi-inverses of a table"},
      {"partial-reduce", "reduction of a partial instance on its qualifying set"},
      {"merge", "glue the factors of the instance's parts into one total factor"},
  };
  for (const auto& [name, desc] : commands) add_common(app.add_subcommand(name, desc), a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : FEQ_ERR_INVALID;
  }
  CLI::App* sub = app.get_subcommands().front();

  feq_instance* ins = nullptr;
  char* err = nullptr;
  feq_status st = feq_instance_parse_file(a.instance.c_str(), &ins, &err);
  if (st != FEQ_OK) {
    std::fprintf(stderr, "%s\n", err ? err : "cannot parse instance");
    feq_string_free(err);
    return static_cast<int>(st);
  }

  feq_options opt;
  feq_options_init(&opt);
  opt.side = a.side.c_str();
  if (sub->count("--base")) opt.base = a.base.c_str();
  opt.tie_break = a.tie_break.c_str();
  opt.enumerate_limit = a.enumerate_limit;
  opt.format = a.format.c_str();
  if (sub->count("--function")) opt.function_file = a.function.c_str();
  if (sub->count("--function-json")) opt.function_json = a.function_json.c_str();
  if (sub->count("--restrict")) opt.restrict_file = a.restrict_path.c_str();
  if (sub->count("--restrict-json")) opt.restrict_json = a.restrict_json.c_str();

  feq_result* res = nullptr;
  feq_run(ins, sub->get_name().c_str(), &opt, &res);
  int status = feq_result_status(res);

  if (const char* report = feq_result_report(res)) {
    if (sub->count("--out")) {
      std::ofstream f(a.out, std::ios::binary);
      if (!f) {
        std::fprintf(stderr, "cannot write %s\n", a.out.c_str());
        feq_result_free(res);
        feq_instance_free(ins);
        return FEQ_ERR_INVALID;
      }
      f << report;
    } else {
      std::fputs(report, stdout);
    }
  }
  if (const char* message = feq_result_message(res)) std::fprintf(stderr, "%s\n", message);

  feq_result_free(res);
  feq_instance_free(ins);
  return status;
}
