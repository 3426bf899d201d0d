// Command-line front end. All computation happens behind the C API of the
// shared library; this binary only handles flags and I/O.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "boxnc/boxnc.h"

namespace {

int run(const std::string& command, const std::string& input_path,
        const std::string& output_path, const boxnc_run_options& options) {
  std::string input_text;
  if (input_path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    input_text = buffer.str();
  } else {
    std::ifstream in(input_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open input file '" << input_path << "'\n";
      return 2;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    input_text = buffer.str();
  }

  char* report = nullptr;
  const boxnc_status status = boxnc_run(command.c_str(), input_text.c_str(), &options, &report);

  int exit_code;
  switch (status) {
    case BOXNC_OK:
      exit_code = 0;
      break;
    case BOXNC_VERDICT_NEGATIVE:
      exit_code = 1;
      break;
    case BOXNC_ERR_INPUT:
      exit_code = 2;
      break;
    default:
      std::cerr << "error: " << boxnc_last_error() << "\n";
      boxnc_string_free(report);
      return 2;
  }

  if (report != nullptr) {
    if (output_path == "-") {
      std::fwrite(report, 1, std::string(report).size(), stdout);
    } else {
      std::ofstream out(output_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot open output file '" << output_path << "'\n";
        boxnc_string_free(report);
        return 2;
      }
      out << report;
    }
    boxnc_string_free(report);
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "boxnc: divided differences, box-convexity certification, convex-order and "
      "inequality verification on discrete measures"};
  app.require_subcommand(1);

  static const char* kCommands[] = {"divdiff",   "certify", "interpolate", "regularize",
                                    "order",     "box-order", "hh",        "jensen",
                                    "rasa",      "synth",   "extract-measure", "decompose",
                                    "strong"};

  std::string input_path = "-";
  std::string output_path = "-";
  boxnc_run_options options{};

  for (const char* name : kCommands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--input,-i", input_path, "input JSON document (file or '-' for stdin)");
    sub->add_option("--out,-o", output_path, "report destination (file or '-' for stdout)");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { options.seed = v; options.has_seed = 1; },
        "random seed for sampling commands");
    sub->add_option_function<double>(
        "--tol", [&](double v) { options.tol = v; options.has_tol = 1; },
        "base tolerance override");
    sub->add_option_function<long>(
        "--trials", [&](long v) { options.trials = v; options.has_trials = 1; },
        "sample count for certification commands");
    sub->add_option_function<long>(
        "--resolution", [&](long v) { options.resolution = v; options.has_resolution = 1; },
        "quadrature resolution for uniform marginals");
  }

  CLI11_PARSE(app, argc, argv);
  return run(app.get_subcommands().front()->get_name(), input_path, output_path, options);
}
