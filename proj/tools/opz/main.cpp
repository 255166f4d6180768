#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "opz/error.hpp"
#include "opz/report.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kCompute = 2, kVerify = 3 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeros of periodic orthogonal polynomials"};
  std::string subcommand, model_path, format = "csv", out_path;
  std::optional<int> n, m, offset;
  std::vector<int> n_list;
  double tol = 1e-8;

  app.add_option("subcommand", subcommand, "bands | equilibrium | dirichlet | zeros | predict | clock | jost | verify")
      ->required()
      ->check(CLI::IsMember(opz::kSubcommands));
  app.add_option("model", model_path, "model file (JSON)")->required();
  auto* n_opt = app.add_option("--n", n, "degree");
  app.add_option("--n-list", n_list, "comma separated degrees")->delimiter(',')->excludes(n_opt);
  app.add_option("--m", m, "number of periods");
  app.add_option("--offset", offset, "offset b");
  app.add_option("--tol", tol, "match tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::ifstream in(model_path, std::ios::binary);
  if (!in) {
    std::cerr << "opz: cannot read " << model_path << "\n";
    return kUsage;
  }
  std::stringstream text;
  text << in.rdbuf();

  std::optional<opz::ModelFile> model;
  try {
    model = opz::parse_model(text.str());
  } catch (const opz::Error& e) {
    std::cerr << "opz: " << model_path << ": " << e.what() << "\n";
    return kUsage;
  }
  if (model->doubled) std::cerr << "opz: odd Verblunsky period will be doubled\n";

  opz::RunConfig cfg;
  if (n) cfg.n_list = {*n};
  if (!n_list.empty()) cfg.n_list = n_list;
  cfg.m = m;
  cfg.offset = offset;
  cfg.tol = tol;
  cfg.format = format == "json" ? opz::Format::Json : opz::Format::Csv;

  opz::RunResult result;
  try {
    result = opz::run_subcommand(subcommand, *model, cfg);
  } catch (const opz::Error& e) {
    std::cerr << "opz: " << e.what() << "\n";
    return e.kind() == opz::ErrorKind::InvalidArgument ? kUsage : kCompute;
  }
  for (const std::string& w : result.warnings) std::cerr << "opz: warning: " << w << "\n";

  const std::string content = opz::render(result.table, cfg.format);
  if (out_path.empty()) {
    std::cout << content;
  } else {
    try {
      opz::write_atomic(out_path, content);
    } catch (const opz::Error& e) {
      std::cerr << "opz: " << e.what() << "\n";
      return kCompute;
    }
  }
  return result.verification_failed ? kVerify : kOk;
}
