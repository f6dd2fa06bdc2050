#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "spectra/catalog.hpp"
#include "spectra/errors.hpp"
#include "spectra/numerics.hpp"
#include "spectra/report_io.hpp"
#include "spectra/svg_plot.hpp"
#include "spectra/theorem_engine.hpp"

namespace {

enum Exit { kOk = 0, kSchema = 1, kRefusal = 2, kDisagreement = 3 };

struct RunArgs {
  std::string file;
  bool verify = false;
  bool strict = false;
  std::string out;
  std::string plot;
  bool cloud = false;
  int grid = 0;
  int depth = 0;
  std::optional<std::string> sigma;
};

constexpr int kDefaultCloudGrid = 300;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw spectra::Error("cannot write " + path);
  f << text;
}

int run(const RunArgs& a) {
  using namespace spectra;
  if (!std::filesystem::is_regular_file(a.file)) {
    std::cerr << "error: cannot read scenario file " << a.file << "\n";
    return kSchema;
  }
  ReportDocument doc;
  std::set<std::string> sets;
  try {
    sets = a.sigma ? parse_set_selection(*a.sigma) : all_set_names();
    doc.scenario = load_scenario(a.file);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const Error& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kSchema;
  }

  bool disagreement = false;
  try {
    doc.report = compute_spectra(doc.scenario);
    if (a.verify) {
      numerics::VerifyOptions vo;
      if (a.grid > 0) vo.grid = a.grid;
      if (a.depth > 0) vo.depth = a.depth;
      doc.verdicts = numerics::verify(doc.scenario, doc.report, vo);
      for (const auto& v : *doc.verdicts)
        if (!v.passed) {
          disagreement = true;
          doc.report.warnings.push_back("oracle disagreement: " + v.quantity);
        }
    }
    std::vector<Complex> cloud;
    if (a.cloud) {
      const auto c = numerics::eigen_cloud(doc.scenario, a.grid > 0 ? a.grid : kDefaultCloudGrid);
      cloud = c.values;
      for (const auto& w : c.warnings) doc.report.warnings.push_back(w);
    }
    const std::string text = dump(to_json(doc, sets));
    if (a.out.empty()) std::cout << text;
    else write_text(a.out, text);
    if (!a.plot.empty()) write_text(a.plot, render_svg(doc.report, cloud));
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const Error& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kRefusal;
  }
  if (disagreement) {
    std::cerr << "warning: oracle disagreement beyond tolerance\n";
    if (a.strict) return kDisagreement;
  }
  return kOk;
}

int examples(const std::string& dir) {
  for (const auto& e : spectra::list_examples()) {
    const std::string desc = e.scenario.value("description", "");
    std::cout << e.name << "\t" << desc << "\n";
    if (!dir.empty()) {
      std::filesystem::create_directories(dir);
      write_text((std::filesystem::path(dir) / (e.name + ".json")).string(), e.scenario.dump(2) + "\n");
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of weighted composition operators on spaces of smooth functions"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run_cmd = app.add_subcommand("run", "compute the spectral report of a scenario file");
  run_cmd->add_option("file", ra.file, "scenario JSON")->required();
  run_cmd->add_flag("--verify", ra.verify, "run the numerical oracles");
  run_cmd->add_flag("--strict", ra.strict, "exit 3 when an oracle disagrees");
  run_cmd->add_option("--out", ra.out, "report path (default stdout)");
  run_cmd->add_option("--plot", ra.plot, "SVG output path");
  run_cmd->add_flag("--cloud", ra.cloud, "add the advisory eigenvalue cloud of a grid matrix");
  run_cmd->add_option("--grid", ra.grid, "oracle grid size")->check(CLI::PositiveNumber);
  run_cmd->add_option("--depth", ra.depth, "cocycle depth")->check(CLI::PositiveNumber);
  run_cmd->add_option("--sigma", ra.sigma, "sets to report, e.g. 1,2,ap,adjoint");

  std::string dir;
  auto* ex_cmd = app.add_subcommand("examples", "list the bundled scenarios");
  ex_cmd->add_option("--write", dir, "also write each scenario to this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kSchema;
  }
  try {
    if (*run_cmd) return run(ra);
    return examples(dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRefusal;
  }
}
