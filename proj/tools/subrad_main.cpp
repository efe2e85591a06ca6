// Command line front end: steady states, parameter sweeps, currents and
// entropy, photon correlations, stochastic trajectories and the closed-form
// results, written as CSV/JSON into an output directory.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subrad/closedform.hpp"
#include "subrad/errors.hpp"
#include "subrad/evolve.hpp"
#include "subrad/io.hpp"
#include "subrad/kmc.hpp"
#include "subrad/noneq.hpp"
#include "subrad/steady.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace subrad;

namespace {

struct CommonOptions {
  int n_atoms = 100;
  double w = 0.1;
  double gamma = 0.1;
  std::string out_dir = "out";

  ModelParams params() const {
    ModelParams p{n_atoms, w, gamma};
    p.validate();
    return p;
  }
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_params = true) {
  if (with_params) {
    cmd->add_option("--N", opt.n_atoms, "Number of atoms (even)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--w", opt.w, "Repump rate in units of the collective rate");
    cmd->add_option("--gamma", opt.gamma, "Free-space decay rate");
  }
  cmd->add_option("--out-dir", opt.out_dir, "Output directory");
}

fs::path prepare_out_dir(const CommonOptions& opt) {
  fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  return dir;
}

ordered_json manifest_skeleton(const std::string& command,
                               const ModelParams& p) {
  ordered_json m;
  m["format_version"] = kFormatVersion;
  m["command"] = command;
  m["params"] = params_json(p);
  return m;
}

void write_manifest(const fs::path& dir, const ordered_json& manifest) {
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// ---------------------------------------------------------------- steady --

int cmd_steady(const CommonOptions& opt, bool dump_generator) {
  const ModelParams p = opt.params();
  const fs::path dir = prepare_out_dir(opt);
  const Generator gen = build_generator(p);
  SteadyReport report;
  const Distribution steady = steady_state(gen, {}, &report);

  write_file(dir / "steady.csv", distribution_csv(steady));
  ordered_json obs = params_json(p);
  obs.update(observables_json(observables(steady)));
  obs["format_version"] = kFormatVersion;
  write_file(dir / "observables.json", obs.dump(2) + "\n");
  if (dump_generator)
    write_file(dir / "generator.csv", generator_csv(gen));

  ordered_json manifest = manifest_skeleton("steady", p);
  manifest["solver"] = {{"method", report.method},
                        {"residual", report.residual}};
  manifest["outputs"] = {"steady.csv", "observables.json"};
  if (dump_generator) manifest["outputs"].push_back("generator.csv");
  write_manifest(dir, manifest);
  std::cout << "steady state written to " << dir.string() << "\n";
  return 0;
}

// ----------------------------------------------------------------- sweep --

struct SweepRow {
  int n_atoms = 0;
  double w = 0.0;
  double s_i_per_atom = 0.0;
  double intensity = 0.0;
  double inversion = 0.0;
  double boundary_mass = 0.0;
  std::string error;
};

std::string csv_safe(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n' || c == '\r') c = ' ';
  return text;
}

int cmd_sweep(const CommonOptions& opt, std::vector<int> n_list, double w_min,
              double w_max, double w_step, int workers) {
  if (n_list.empty()) n_list.push_back(opt.n_atoms);
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
  if (!(w_step > 0)) throw std::invalid_argument("--w-step must be positive");
  if (w_max < w_min) throw std::invalid_argument("--w-max below --w-min");

  std::vector<SweepRow> rows;
  for (int n : n_list) {
    for (int k = 0;; ++k) {
      const double w = w_min + k * w_step;
      if (w > w_max + 0.5 * w_step) break;
      SweepRow row;
      row.n_atoms = n;
      row.w = w;
      rows.push_back(row);
    }
  }

  const int n_workers =
      std::max(1, std::min<int>(resolve_workers(workers),
                                static_cast<int>(rows.size())));
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < rows.size();) {
      SweepRow& row = rows[i];
      try {
        ModelParams p{row.n_atoms, row.w, opt.gamma};
        p.validate();
        const Generator gen = build_generator(p);
        const Distribution steady = steady_state(gen);
        const ObservableSet obs = observables(steady);
        row.s_i_per_atom = entropy_rates(gen, steady).s_i_per_atom;
        row.intensity = obs.intensity;
        row.inversion = obs.inversion;
        row.boundary_mass = obs.boundary_mass;
      } catch (const std::exception& e) {
        row.error = csv_safe(e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < n_workers; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  std::string csv = "N,w,s_i_per_atom,intensity,inversion,boundary_mass,error\n";
  for (const SweepRow& row : rows) {
    csv += std::to_string(row.n_atoms);
    csv += ',';
    csv += format_double(row.w);
    csv += ',';
    if (row.error.empty()) {
      csv += format_double(row.s_i_per_atom);
      csv += ',';
      csv += format_double(row.intensity);
      csv += ',';
      csv += format_double(row.inversion);
      csv += ',';
      csv += format_double(row.boundary_mass);
      csv += ',';
    } else {
      csv += ",,,,";
      csv += row.error;
    }
    csv += '\n';
  }
  const fs::path dir = prepare_out_dir(opt);
  write_file(dir / "sweep.csv", csv);

  ModelParams manifest_params{n_list.front(), w_min, opt.gamma};
  ordered_json manifest = manifest_skeleton("sweep", manifest_params);
  manifest["params"].erase("N");
  manifest["params"].erase("w");
  manifest["N"] = n_list;
  manifest["w_grid"] = {{"min", w_min}, {"max", w_max}, {"step", w_step}};
  manifest["rows"] = rows.size();
  manifest["outputs"] = {"sweep.csv"};
  write_manifest(dir, manifest);
  std::cout << "sweep of " << rows.size() << " points written to "
            << dir.string() << "\n";
  return 0;
}

// -------------------------------------------------------------- currents --

int cmd_currents(const CommonOptions& opt) {
  const ModelParams p = opt.params();
  const fs::path dir = prepare_out_dir(opt);
  const Generator gen = build_generator(p);
  const Distribution steady = steady_state(gen);

  write_file(dir / "currents.csv", currents_csv(currents(gen, steady)));
  const EntropyReport entropy = entropy_rates(gen, steady);
  ordered_json ej = entropy_json(entropy, p);
  ej["format_version"] = kFormatVersion;
  write_file(dir / "entropy.json", ej.dump(2) + "\n");

  ordered_json manifest = manifest_skeleton("currents", p);
  manifest["outputs"] = {"currents.csv", "entropy.json"};
  write_manifest(dir, manifest);
  std::cout << "currents and entropy written to " << dir.string() << "\n";
  return 0;
}

// -------------------------------------------------------------------- g2 --

int cmd_g2(const CommonOptions& opt, double tau_max, int points,
           bool tau_log) {
  if (!(tau_max > 0)) throw std::invalid_argument("--tau-max must be positive");
  if (points < 2) throw std::invalid_argument("--points must be >= 2");
  const ModelParams p = opt.params();
  const fs::path dir = prepare_out_dir(opt);

  std::vector<double> taus(static_cast<std::size_t>(points));
  if (tau_log) {
    // Three decades up to tau_max.
    const double lo = tau_max * 1e-3;
    for (int i = 0; i < points; ++i)
      taus[static_cast<std::size_t>(i)] =
          lo * std::pow(tau_max / lo, static_cast<double>(i) / (points - 1));
  } else {
    for (int i = 0; i < points; ++i)
      taus[static_cast<std::size_t>(i)] =
          tau_max * static_cast<double>(i) / (points - 1);
  }

  const Generator gen = build_generator(p);
  const Distribution steady = steady_state(gen);
  const std::vector<double> values = g2(gen, steady, taus);
  write_file(dir / "g2.csv", g2_csv(taus, values));

  ordered_json manifest = manifest_skeleton("g2", p);
  manifest["tau_max"] = tau_max;
  manifest["points"] = points;
  manifest["tau_log"] = tau_log;
  manifest["outputs"] = {"g2.csv"};
  write_manifest(dir, manifest);
  std::cout << "g2 on " << points << " lags written to " << dir.string()
            << "\n";
  return 0;
}

// ------------------------------------------------------------------ traj --

int cmd_traj(const CommonOptions& opt, double t_max, std::uint64_t seed,
             double burn_in, const std::string& filter_spec, double window) {
  const ModelParams p = opt.params();
  const fs::path dir = prepare_out_dir(opt);
  const ChannelMask filter = ChannelMask::parse(filter_spec);

  const JumpRecord record = simulate(p, {0, 0}, t_max, seed);
  write_file(dir / "events.csv", events_csv(record));

  ordered_json stats = manifest_skeleton("traj", p);
  stats.erase("command");
  stats["seed"] = seed;
  stats["rng"] = record.rng_name;
  stats["t_end"] = record.t_end;
  stats["burn_in"] = burn_in;
  stats["filter"] = filter_spec;
  stats["n_events"] = record.events.size();
  stats["absorbed"] = record.absorbed;

  const Distribution occ = occupancy(record, burn_in);
  stats["occupancy"] = observables_json(observables(occ));

  if (window > 0) {
    try {
      const BurstStats bursts = burst_stats(record, filter, window, burn_in);
      stats["window"] = window;
      stats["fano"] = bursts.fano;
      stats["mean_per_window"] = bursts.mean_per_window;
      stats["n_windows"] = bursts.n_windows;
      stats["n_filtered_events"] = bursts.n_events;
    } catch (const std::invalid_argument& e) {
      stats["burst_error"] = e.what();
    }
  }
  write_file(dir / "traj_stats.json", stats.dump(2) + "\n");

  ordered_json manifest = manifest_skeleton("traj", p);
  manifest["seed"] = seed;
  manifest["t_max"] = t_max;
  manifest["outputs"] = {"events.csv", "traj_stats.json"};
  write_manifest(dir, manifest);
  std::cout << record.events.size() << " events written to " << dir.string()
            << "\n";
  return 0;
}

// -------------------------------------------------------------- analytic --

int cmd_analytic_boundary(const CommonOptions& opt) {
  const ModelParams p = opt.params();
  const fs::path dir = prepare_out_dir(opt);
  const BoundaryDistribution boundary = boundary_recursion(p);
  ordered_json out = manifest_skeleton("analytic boundary", p);
  out["mean"] = boundary.mean();
  out["variance"] = boundary.variance();
  out["P"] = std::vector<double>(boundary.p.data(),
                                 boundary.p.data() + boundary.p.size());
  write_file(dir / "boundary.json", out.dump(2) + "\n");
  std::cout << "dark-edge distribution written to " << dir.string() << "\n";
  return 0;
}

int cmd_analytic_gaussian(const CommonOptions& opt) {
  const ModelParams p = opt.params();
  const fs::path dir = prepare_out_dir(opt);
  const GaussianLimit limit = gaussian_limit(p);
  ordered_json out = manifest_skeleton("analytic gaussian", p);
  out["mu"] = limit.mu;
  out["sigma2"] = limit.sigma2;
  write_file(dir / "gaussian.json", out.dump(2) + "\n");
  std::cout << "mu = " << format_double(limit.mu)
            << ", sigma2 = " << format_double(limit.sigma2) << "\n";
  return 0;
}

int cmd_analytic_ratios(const CommonOptions& opt, int j_max) {
  if (j_max < 1) throw std::invalid_argument("--j-max must be >= 1");
  const fs::path dir = prepare_out_dir(opt);
  ordered_json out;
  out["format_version"] = kFormatVersion;
  out["command"] = "analytic ratios";
  out["ratios"] = ordered_json::array();
  for (int j = 1; j <= j_max; ++j) {
    const Rational r = ratio_table(j);
    out["ratios"].push_back({{"J", j},
                             {"exact", r.to_string()},
                             {"value", r.to_double()}});
    std::cout << "P_" << j << "/P_" << j - 1 << " -> " << r.to_string()
              << "\n";
  }
  write_file(dir / "ratios.json", out.dump(2) + "\n");
  return 0;
}

int cmd_analytic_smallw(const CommonOptions& opt) {
  const fs::path dir = prepare_out_dir(opt);
  const SmallPumpPopulations pops = small_w_populations();
  ordered_json out;
  out["format_version"] = kFormatVersion;
  out["command"] = "analytic smallw";
  out["P0"] = {{"exact", pops.p0.to_string()}, {"value", pops.p0.to_double()}};
  out["P1"] = {{"exact", pops.p1.to_string()}, {"value", pops.p1.to_double()}};
  out["P2"] = {{"exact", pops.p2.to_string()}, {"value", pops.p2.to_double()}};
  write_file(dir / "smallw.json", out.dump(2) + "\n");
  std::cout << "P0 = " << pops.p0.to_string()
            << ", P1 = " << pops.p1.to_string()
            << ", P2 = " << pops.p2.to_string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collective jump process of a repumped ensemble in a lossy cavity"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");

  // steady
  CommonOptions steady_opt;
  bool dump_generator = false;
  CLI::App* steady_cmd =
      app.add_subcommand("steady", "Stationary distribution and observables");
  add_common(steady_cmd, steady_opt);
  steady_cmd->add_flag("--dump-generator", dump_generator,
                       "Also write the rate triplets");

  // sweep
  CommonOptions sweep_opt;
  std::vector<int> sweep_n;
  double w_min = 0.02, w_max = 0.3, w_step = 0.02;
  int workers = 0;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Steady-state scan over w and N");
  sweep_cmd->add_option("--N", sweep_n, "Atom numbers (repeatable)")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--gamma", sweep_opt.gamma, "Free-space decay rate");
  sweep_cmd->add_option("--out-dir", sweep_opt.out_dir, "Output directory");
  sweep_cmd->add_option("--w-min", w_min, "Smallest repump rate");
  sweep_cmd->add_option("--w-max", w_max, "Largest repump rate");
  sweep_cmd->add_option("--w-step", w_step, "Repump rate increment");
  sweep_cmd->add_option("--workers", workers, "Parallel solves (0 = all cores)")
      ->envname("SUBRAD_WORKERS");

  // currents
  CommonOptions currents_opt;
  CLI::App* currents_cmd = app.add_subcommand(
      "currents", "Stationary pair currents and entropy rates");
  add_common(currents_cmd, currents_opt);

  // g2
  CommonOptions g2_opt;
  double tau_max = 50.0;
  int points = 200;
  bool tau_log = false;
  CLI::App* g2_cmd =
      app.add_subcommand("g2", "Second-order intensity correlation");
  add_common(g2_cmd, g2_opt);
  g2_cmd->add_option("--tau-max", tau_max, "Largest lag");
  g2_cmd->add_option("--points", points, "Number of lags");
  g2_cmd->add_flag("--tau-log", tau_log, "Log-spaced lags over three decades");

  // traj
  CommonOptions traj_opt;
  double t_max = 100.0, burn_in = 0.0, window = 0.0;
  std::uint64_t seed = 1;
  std::string filter_spec = "collective";
  CLI::App* traj_cmd =
      app.add_subcommand("traj", "Stochastic trajectory and burst statistics");
  add_common(traj_cmd, traj_opt);
  traj_cmd->add_option("--t-max", t_max, "Trajectory length");
  traj_cmd->add_option("--seed", seed, "RNG seed");
  traj_cmd->add_option("--burn-in", burn_in, "Time discarded from statistics");
  traj_cmd->add_option("--filter", filter_spec,
                       "Channels counted: all, collective, repump, decay or a channel name");
  traj_cmd->add_option("--window", window,
                       "Counting window for the Fano factor (0 = skip)");

  // analytic
  CLI::App* analytic_cmd =
      app.add_subcommand("analytic", "Closed-form results");
  analytic_cmd->require_subcommand(1);
  CommonOptions boundary_opt;
  CLI::App* boundary_cmd = analytic_cmd->add_subcommand(
      "boundary", "Dark-edge distribution from the product recursion");
  add_common(boundary_cmd, boundary_opt);
  CommonOptions gaussian_opt;
  CLI::App* gaussian_cmd = analytic_cmd->add_subcommand(
      "gaussian", "Large-N Gaussian profile of the dark edge");
  add_common(gaussian_cmd, gaussian_opt);
  CommonOptions ratios_opt;
  int j_max = 5;
  CLI::App* ratios_cmd = analytic_cmd->add_subcommand(
      "ratios", "Small-pump population ratios at gamma = 0");
  add_common(ratios_cmd, ratios_opt, false);
  ratios_cmd->add_option("--j-max", j_max, "Largest J in the table");
  CommonOptions smallw_opt;
  CLI::App* smallw_cmd = analytic_cmd->add_subcommand(
      "smallw", "Truncated small-pump dark-edge populations");
  add_common(smallw_cmd, smallw_opt, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (steady_cmd->parsed()) return cmd_steady(steady_opt, dump_generator);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_opt, sweep_n, w_min, w_max, w_step, workers);
    if (currents_cmd->parsed()) return cmd_currents(currents_opt);
    if (g2_cmd->parsed()) return cmd_g2(g2_opt, tau_max, points, tau_log);
    if (traj_cmd->parsed())
      return cmd_traj(traj_opt, t_max, seed, burn_in, filter_spec, window);
    if (analytic_cmd->parsed()) {
      if (boundary_cmd->parsed()) return cmd_analytic_boundary(boundary_opt);
      if (gaussian_cmd->parsed()) return cmd_analytic_gaussian(gaussian_opt);
      if (ratios_cmd->parsed()) return cmd_analytic_ratios(ratios_opt, j_max);
      if (smallw_cmd->parsed()) return cmd_analytic_smallw(smallw_opt);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
