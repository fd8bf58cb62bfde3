// morita <command> <workspace.json> [flags]

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "morita/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Morita context toolkit"};
  morita::Flags flags;
  std::string command, out_path, format = "human";
  app.add_option("command", command, "validate | trace | strict | torsion | localize | closed | equiv | equiv-strict | "
                                     "equiv-proj | compose | iso | graded-equiv | catalog")
      ->required();
  app.add_option("workspace", flags.workspace, "workspace JSON file")->required();
  app.add_option("--context", flags.contexts, "context name (repeat for compose and iso)");
  app.add_option("--module", flags.modules, "module name (repeat for iso)");
  app.add_option("--ideal", flags.ideal, "ideal generating the torsion theory");
  app.add_option("--algebra", flags.algebra, "algebra for catalog");
  app.add_option("--grading", flags.grading, "grading for graded-equiv");
  app.add_option("--max-dim", flags.max_dim, "catalog dimension bound")->capture_default_str();
  app.add_option("--budget", flags.budget, "subspace enumeration budget")->capture_default_str();
  app.add_option("--seed", flags.seed, "seed for every sampled procedure")->capture_default_str();
  app.add_flag("--strict-sampling", flags.strict_sampling, "count passes that rest on sampling as failures");
  app.add_option("--out", out_path, "write the machine report here");
  app.add_option("--format", format, "human | machine")->check(CLI::IsMember({"human", "machine"}))->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  morita::RunResult result = morita::run_file(command, flags, format == "human");
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << result.machine;
  }
  if (result.exit_code == 2)
    std::cerr << result.human;
  else
    std::cout << (format == "human" ? result.human : result.machine);
  return result.exit_code;
}
