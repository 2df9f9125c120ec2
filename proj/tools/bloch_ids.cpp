#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bloch/catalog.hpp"
#include "bloch/errors.hpp"
#include "bloch/floquet.hpp"
#include "bloch/graph.hpp"
#include "bloch/ids.hpp"
#include "bloch/io.hpp"
#include "bloch/oracle.hpp"
#include "bloch/spectral.hpp"
#include "json.hpp"

namespace {

using namespace bloch;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_verification = 2;
constexpr int exit_io = 3;

struct Flags {
  std::string tiling;
  std::string method = "numeric";
  std::string out = "-";
  std::string config;
  std::string load;
  std::uint64_t seed = default_seed;
  int grid = 0;
  int cells = 8;
  double emin = -0.05;
  double emax = 2.05;
  int steps = 200;
  bool all = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

TilingName require_tiling(const std::string& text) {
  if (text.empty()) throw UsageError("--tiling is required");
  if (auto t = parse_tiling(text)) return *t;
  throw UsageError("unknown tiling \"" + text + "\"; run `bloch_ids list` for the catalog");
}

// Explicit flags override the config file, which overrides the defaults.
struct Resolved {
  QuadratureConfig quadrature;
  std::vector<double> energies;
};

Resolved resolve(const Flags& f, const CLI::App& cmd, int default_grid) {
  RunConfig cfg;
  cfg.quadrature.torus_grid = default_grid;
  if (!f.config.empty()) cfg = parse_run_config(read_file(f.config));
  Resolved r;
  r.quadrature = cfg.quadrature;
  auto set = [&](const char* name) {
    const CLI::Option* opt = cmd.get_option_no_throw(name);
    return opt && opt->count() > 0;
  };
  if (set("--grid")) r.quadrature.torus_grid = f.grid;
  const double emin = set("--emin") ? f.emin : cfg.emin.value_or(f.emin);
  const double emax = set("--emax") ? f.emax : cfg.emax.value_or(f.emax);
  const int steps = set("--steps") ? f.steps : cfg.steps.value_or(f.steps);
  check_config(r.quadrature);
  r.energies = energy_grid(emin, emax, steps);
  return r;
}

void add_energy_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--emin", f.emin, "lowest energy")->capture_default_str();
  cmd->add_option("--emax", f.emax, "highest energy")->capture_default_str();
  cmd->add_option("--steps", f.steps, "number of energies (>= 2)")->capture_default_str();
}

int cmd_list() {
  std::vector<TilingName> all = archimedean_tilings();
  all.insert(all.begin(), TilingName::z(1));
  all.insert(all.begin() + 1, TilingName::z(2));
  all.push_back(TilingName::non_archimedean(0.0));
  for (const auto& t : all) {
    const PeriodicGraph g = catalog(t);
    std::cout << t.id() << '\t' << t.notation() << "\t|Q|=" << g.num_vertices() << "\tdegree=";
    if (g.expected_degree()) {
      std::cout << *g.expected_degree();
    } else {
      std::cout << "irregular";
    }
    std::cout << (has_closed_form(t) ? "\tclosed-form IDS" : "") << '\n';
  }
  return exit_ok;
}

int cmd_dispersion(const PeriodicGraph& g, const Flags& f, const CLI::App& cmd) {
  const int grid = cmd.get_option("--grid")->count() ? f.grid : 64;
  write_file(f.out, dispersion_csv(dispersion_grid(g, grid)));
  return exit_ok;
}

int cmd_ids(const PeriodicGraph& g, const std::optional<TilingName>& t, const Flags& f, const CLI::App& cmd) {
  const Resolved r = resolve(f, cmd, QuadratureConfig{}.torus_grid);
  IDSCurve curve;
  if (f.method == "closed") {
    if (!t) throw UsageError("closed-form IDS needs a catalog tiling");
    curve = ids_closed_form_curve(*t, r.energies, r.quadrature);
  } else {
    curve = ids_numeric(g, r.energies, r.quadrature);
  }
  write_file(f.out, ids_csv(curve));
  return exit_ok;
}

int cmd_verify(const Flags& f) {
  std::vector<TilingName> targets;
  if (f.all) {
    targets = archimedean_tilings();
    targets.push_back(TilingName::non_archimedean(0.0));
  } else {
    targets.push_back(require_tiling(f.tiling));
  }
  VerifyOptions opts;
  opts.seed = f.seed;
  std::vector<VerificationReport> reports;
  bool ok = true;
  for (const auto& t : targets) {
    reports.push_back(verify_tiling(t, opts));
    const auto& r = reports.back();
    ok = ok && r.passed;
    std::cerr << (r.passed ? "ok   " : "FAIL ") << r.tiling << '\n';
    for (const auto& msg : r.failures) std::cerr << "     " << msg << '\n';
  }
  write_file(f.out, f.all ? report_json(reports) : report_json(reports.front()));
  return ok ? exit_ok : exit_verification;
}

int cmd_oracle(const Flags& f, const CLI::App& cmd) {
  const TilingName t = require_tiling(f.tiling);
  const Resolved r = resolve(f, cmd, QuadratureConfig{}.torus_grid);
  const Spectrum s = finite_spectrum(catalog(t), f.cells);
  IDSCurve curve;
  curve.energies = r.energies;
  for (double e : r.energies) curve.values.push_back(empirical_counting(s, e));
  write_file(f.out, ids_csv(curve));
  return exit_ok;
}

int cmd_graph_validate(const Flags& f) {
  try {
    const PeriodicGraph g = load_graph_file(f.load);
    std::cout << g.name() << ": valid, |Q|=" << g.num_vertices() << ", " << g.edges().size() << " edges\n";
    return exit_ok;
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) std::cout << v << '\n';
    return exit_verification;
  }
}

int cmd_graph_flatbands(const Flags& f, const CLI::App& cmd) {
  const PeriodicGraph g = load_graph_file(f.load);
  const FlatBandReport report = detect_flat_bands(g, 16, 1e-6, f.seed);
  QuadratureConfig cfg;
  cfg.torus_grid = cmd.get_option("--grid")->count() ? f.grid : 64;
  nlohmann::json flat = nlohmann::json::array();
  for (const auto& band : report.flat_energies) {
    flat.push_back({{"E", band.energy}, {"jump", jump_size(g, band.energy, cfg)}});
  }
  write_file(f.out, nlohmann::json{{"tiling", g.name()}, {"flat_bands", flat}}.dump(2) + "\n");
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dispersion relations and integrated density of states of periodic graph Laplacians"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "JSON config with grid, tol_1d, emin, emax, steps");
  app.add_option("--seed", f.seed, "seed for theta sampling")->capture_default_str();

  auto* list = app.add_subcommand("list", "list the built-in graphs");

  auto* disp = app.add_subcommand("dispersion", "band functions on the midpoint grid");
  disp->add_option("--tiling", f.tiling, "catalog id or vertex-type notation")->required();
  disp->add_option("--grid", f.grid, "grid points per axis (default 64)");
  disp->add_option("--out", f.out, "output CSV, - for stdout")->capture_default_str();

  auto* ids = app.add_subcommand("ids", "integrated density of states");
  ids->add_option("--tiling", f.tiling, "catalog id or vertex-type notation")->required();
  ids->add_option("--method", f.method, "numeric or closed")
      ->check(CLI::IsMember({"numeric", "closed"}))
      ->capture_default_str();
  ids->add_option("--grid", f.grid, "torus grid per axis (default 512)");
  add_energy_flags(ids, f);
  ids->add_option("--out", f.out, "output CSV, - for stdout")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "flat bands, certificates and compact eigenfunctions");
  auto* vt = verify->add_option("--tiling", f.tiling, "catalog id or vertex-type notation");
  auto* va = verify->add_flag("--all", f.all, "all Archimedean tilings and the non-Archimedean example");
  vt->excludes(va);
  verify->add_option("--out", f.out, "output JSON, - for stdout")->capture_default_str();

  auto* orc = app.add_subcommand("oracle", "counting function of the finite torus quotient");
  orc->add_option("--tiling", f.tiling, "catalog id or vertex-type notation")->required();
  orc->add_option("--n", f.cells, "cells per axis")->capture_default_str();
  add_energy_flags(orc, f);
  orc->add_option("--out", f.out, "output CSV, - for stdout")->capture_default_str();

  auto* graph = app.add_subcommand("graph", "operate on a graph document");
  graph->add_option("--load", f.load, "graph document (JSON)")->required();
  graph->require_subcommand(1);
  auto* g_validate = graph->add_subcommand("validate", "check the graph invariants");
  auto* g_disp = graph->add_subcommand("dispersion", "band functions on the midpoint grid");
  g_disp->add_option("--grid", f.grid, "grid points per axis (default 64)");
  g_disp->add_option("--out", f.out, "output CSV, - for stdout");
  auto* g_ids = graph->add_subcommand("ids", "numeric integrated density of states");
  g_ids->add_option("--grid", f.grid, "torus grid per axis (default 512)");
  add_energy_flags(g_ids, f);
  g_ids->add_option("--out", f.out, "output CSV, - for stdout");
  auto* g_flat = graph->add_subcommand("flatbands", "detect flat bands");
  g_flat->add_option("--grid", f.grid, "grid used for jump sizes (default 64)");
  g_flat->add_option("--out", f.out, "output JSON, - for stdout");
  auto* g_export = graph->add_subcommand("export", "re-emit the document in canonical form");
  g_export->add_option("--out", f.out, "output JSON, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*list) return cmd_list();
    if (*disp) return cmd_dispersion(catalog(require_tiling(f.tiling)), f, *disp);
    if (*ids) {
      const TilingName t = require_tiling(f.tiling);
      return cmd_ids(catalog(t), t, f, *ids);
    }
    if (*verify) {
      if (!f.all && f.tiling.empty()) throw UsageError("verify needs --tiling or --all");
      return cmd_verify(f);
    }
    if (*orc) return cmd_oracle(f, *orc);
    if (*graph) {
      if (*g_validate) return cmd_graph_validate(f);
      if (*g_disp) return cmd_dispersion(load_graph_file(f.load), f, *g_disp);
      if (*g_ids) return cmd_ids(load_graph_file(f.load), std::nullopt, f, *g_ids);
      if (*g_flat) return cmd_graph_flatbands(f, *g_flat);
      if (*g_export) {
        write_file(f.out, serialize(load_graph_file(f.load)));
        return exit_ok;
      }
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    for (const auto& v : e.violations()) std::cerr << "  " << v << '\n';
    return exit_usage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
