#include <fstream>
#include <iostream>
#include <iterator>

#include <CLI11.hpp>

#include "sfkit/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = sfkit::cli;
  CLI::App app{"Non-properness sets and uniruledness certificates for polynomial maps"};
  cli::Options opt;
  std::string command, file, report_path;
  bool text = false;
  unsigned degree = 0;

  app.add_option("command", command, "sf | certify | track | decompose | fixlocus | bounds | examples")
      ->required()
      ->check(CLI::IsMember(cli::commands()));
  app.add_option("problem", file, "problem file (JSON, format 1)");
  app.add_option("--order", opt.order, "monomial order for printed bases")->check(CLI::IsMember({"lex", "grevlex"}));
  auto* deg = app.add_option("--degree", degree, "curve degree for certify");
  app.add_option("--samples", opt.samples, "sample points generated per variety when the problem lists none");
  app.add_option("--kmax", opt.kmax, "tracker schedule k = 2^1 .. 2^kmax");
  app.add_option("--tol", opt.tol, "tracker convergence tolerance");
  app.add_option("--seed", opt.seed, "seed for curve and sample searches");
  app.add_option("--corpus", opt.corpus, "corpus directory for examples");
  app.add_option("--csv", opt.csv, "write tracker traces as CSV");
  app.add_option("--report", report_path, "also write the JSON report to this file");
  app.add_flag("--sharpness", opt.sharpness, "certify: also prove no smaller curve exists at each sample");
  app.add_flag("--text", text, "print a human-readable summary instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cli::Exit::parse_error;
  }
  if (*deg) opt.degree = degree;

  cli::Outcome out;
  if (command == "examples") {
    out = cli::run_examples(opt);
  } else {
    if (file.empty()) {
      std::cerr << "error: " << command << " needs a problem file\n";
      return cli::Exit::parse_error;
    }
    std::ifstream is(file, std::ios::binary);
    if (!is) {
      std::cerr << "error: cannot read " << file << "\n";
      return cli::Exit::parse_error;
    }
    std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    out = cli::run(command, bytes, opt);
  }
  if (!report_path.empty()) std::ofstream(report_path) << out.report.dump(2) << "\n";
  if (text) std::cout << out.text;
  else std::cout << out.report.dump(2) << "\n";
  return out.exit;
}
