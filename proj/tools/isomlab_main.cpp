// isomlab: batch front end over the operator-theory engines.  Every
// subcommand reads JSON descriptions, runs the corresponding check, and
// emits a deterministic JSON (or CSV) document; the exit code is 0 only
// when every certificate passes.

#include <CLI11.hpp>
#include <iostream>

#include "isomlab/cli.hpp"

namespace {

struct OptionSpec {
  std::string name;
  std::string help;
  bool required = false;
};

void add_command(CLI::App& app, isomlab::cli::RunConfig& cfg,
                 const std::string& name, const std::string& help,
                 const std::vector<OptionSpec>& options,
                 std::vector<std::shared_ptr<std::string>>& storage,
                 CLI::App* parent = nullptr) {
  CLI::App* cmd = (parent ? parent : &app)->add_subcommand(name, help);
  for (const auto& spec : options) {
    auto value = std::make_shared<std::string>();
    storage.push_back(value);
    CLI::Option* o = cmd->add_option("--" + spec.name, *value, spec.help);
    if (spec.required) o->required();
  }
  const std::string full_name =
      parent ? parent->get_name() + "-" + name : name;
  cmd->callback([cmd, &cfg, full_name] {
    cfg.command = full_name;
    for (const CLI::Option* o : cmd->get_options()) {
      if (o->get_name().size() > 2 && o->count() > 0)
        cfg.options[o->get_name().substr(2)] = o->results().front();
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isomlab: doubly commuting semigroups of isometries, at desk scale"};
  app.require_subcommand(1);

  isomlab::cli::RunConfig cfg;
  app.add_option("--tol", cfg.tol, "global tolerance (default 1e-10)");
  app.add_option("--out", cfg.out_path, "write the document to this path");
  app.add_option("--format", cfg.format, "output format: json|csv");

  std::vector<std::shared_ptr<std::string>> storage;
  add_command(app, cfg, "gram", "Gram matrix + PSD certificate",
              {{"vectors", "semicolon-separated ExpVector JSON paths", true},
               {"seed", "rng seed"}},
              storage);
  add_command(app, cfg, "cooper-verify",
              "Gram-equality certificate for a K_z eigenvector",
              {{"rep", "representation JSON path", true},
               {"xi", "vector JSON path", true},
               {"z", "inline JSON half-plane point, e.g. [[1,0]]", true},
               {"count", "number of random (s,t) pairs"},
               {"claim", "claimed deviation bound"},
               {"eigen-tol", "eigen-relation tolerance"},
               {"seed", "rng seed"}},
              storage);
  add_command(app, cfg, "wold", "Wold decomposition of a vector",
              {{"rep", "representation JSON path", true},
               {"vector", "vector JSON path", true},
               {"horizon", "limit horizon"}},
              storage);
  add_command(app, cfg, "wold-reconstruct",
              "wandering-subspace expansion certificate",
              {{"rep", "discrete representation JSON path", true},
               {"vector", "sparse vector JSON path", true},
               {"box", "truncation box"}},
              storage);
  add_command(app, cfg, "periodic-modes",
              "Fourier projections of a periodic semigroup",
              {{"semigroup", "periodic semigroup JSON path", true},
               {"lo", "comma-separated lower frequencies", true},
               {"hi", "comma-separated upper frequencies", true},
               {"quad", "quadrature points per axis"}},
              storage);
  add_command(app, cfg, "fell-separate", "separation witness for two classes",
              {{"p", "FellPoint JSON path", true},
               {"q", "FellPoint JSON path", true},
               {"xi", "optional unit ExpVector JSON path"}},
              storage);
  add_command(app, cfg, "fell-closure", "closure membership of two classes",
              {{"p", "FellPoint JSON path", true},
               {"q", "FellPoint JSON path", true}},
              storage);
  add_command(app, cfg, "fell-density",
              "quantitative density certificate for the shift class",
              {{"lambda", "character", true},
               {"eps", "epsilon in (0, sqrt 2)", true},
               {"a", "compact horizon", true},
               {"grid", "grid points"}},
              storage);
  add_command(app, cfg, "xmember", "positive-mass certificate for a sequence",
              {{"seq", "boundary sequence JSON path", true},
               {"tol", "mass threshold"},
               {"depth", "evaluation depth"}},
              storage);
  add_command(app, cfg, "kakutani", "Hellinger trichotomy report",
              {{"a", "boundary sequence JSON path", true},
               {"b", "boundary sequence JSON path", true},
               {"nmax", "partial-product depth"},
               {"threshold", "singularity threshold"}},
              storage);
  add_command(app, cfg, "va-check",
              "isometry/commutation/purity suite for V^A",
              {{"seq", "boundary sequence JSON path", true},
               {"arity", "number of coordinates"},
               {"count", "random vectors"},
               {"seed", "rng seed"}},
              storage);
  add_command(app, cfg, "restrict-equiv",
              "finite-restriction intertwiner certificate",
              {{"a", "boundary sequence JSON path", true},
               {"b", "boundary sequence JSON path", true},
               {"n", "restricted coordinates"},
               {"grid-points", "time grid size"},
               {"grid-step", "time grid step"},
               {"vectors", "test vectors"},
               {"seed", "rng seed"}},
              storage);
  add_command(app, cfg, "wold-failure", "direct-integral piece masses",
              {{"d", "number of directions", true},
               {"nu1", "nu({1})"},
               {"nu0", "nu({0})"}},
              storage);

  // `isomlab fell separate|closure|density ...` spellings.
  CLI::App* fell = app.add_subcommand("fell", "Fell-topology commands");
  fell->require_subcommand(1);
  add_command(app, cfg, "separate", "separation witness",
              {{"p", "", true}, {"q", "", true}, {"xi", ""}}, storage, fell);
  add_command(app, cfg, "closure", "closure membership",
              {{"p", "", true}, {"q", "", true}}, storage, fell);
  add_command(app, cfg, "density", "density certificate",
              {{"lambda", "", true},
               {"eps", "", true},
               {"a", "", true},
               {"grid", ""}},
              storage, fell);

  CLI11_PARSE(app, argc, argv);

  const isomlab::cli::RunResult result = isomlab::cli::run(cfg);
  if (!result.output.empty() && cfg.out_path.empty())
    std::cout << result.output;
  if (!result.error.empty()) std::cerr << result.error << "\n";
  return result.exit_code;
}
