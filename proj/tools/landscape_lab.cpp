// landscape-lab: pipeline driver for landscape-based spectral prediction.
//
// Commands compose through files only (JSON for structured data, CSV for
// tables, PGM for 2D rasters); identical configs and seeds give
// byte-identical outputs.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "llab/geometry.hpp"
#include "llab/io.hpp"
#include "llab/landscape.hpp"
#include "llab/potential.hpp"
#include "llab/predict.hpp"
#include "llab/spectra.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace llab;

namespace {

constexpr const char* kVersion = "0.1.0";

int default_refinement(int dim) { return dim == 1 ? 10 : 5; }

std::string potential_filename(std::uint64_t seed) {
  return "potential_seed" + std::to_string(seed) + ".json";
}

void write_provenance(const fs::path& dir, const std::string& command,
                      const json& config, const json& reports = json::object()) {
  json j;
  j["tool"] = "landscape-lab";
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = config;
  j["reports"] = reports;
  std::ofstream out(dir / "provenance.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write provenance.json");
  out << j.dump(2) << "\n";
}

json report_of(const SolveReport& r) {
  return {{"iterations", r.iterations},
          {"relative_residual", r.relative_residual},
          {"converged", r.converged}};
}

std::pair<Real, Real> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::runtime_error("range must be lo:hi");
  }
  return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
}

std::vector<std::string> well_header(int dim) {
  if (dim == 1) return {"rank", "index", "x", "w_min"};
  return {"rank", "index", "x", "y", "w_min"};
}

void write_wells_csv(const fs::path& path, const std::vector<Well>& wells, int dim) {
  CsvWriter csv(path, well_header(dim));
  for (const Well& w : wells) {
    std::vector<std::string> row{std::to_string(w.rank), std::to_string(w.min_index),
                                 format_real(w.min_location[0])};
    if (dim == 2) row.push_back(format_real(w.min_location[1]));
    row.push_back(format_real(w.w_min));
    csv.row(row);
  }
  csv.close();
}

void write_regions_csv(const fs::path& path, const std::vector<Region>& regions) {
  CsvWriter csv(path, {"rank", "energy", "member_index"});
  for (const Region& region : regions) {
    for (Index m : region.members) {
      csv.row({std::to_string(region.seed_well_rank), format_real(region.energy),
               std::to_string(m)});
    }
  }
  csv.close();
}

void write_eigs_csv(const fs::path& path, const std::vector<EigenPair>& pairs) {
  if (pairs.empty()) throw std::runtime_error("no eigenpairs to write");
  const Grid& grid = pairs.front().psi.grid;
  std::vector<std::string> header{"rank", "lambda", "residual", "peak_index",
                                  "peak_x"};
  if (grid.dim() == 2) header.push_back("peak_y");
  CsvWriter csv(path, header);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [peak, ignored] = argmax_field(
        ScalarField(grid, pairs[i].psi.values.abs()));
    const auto loc = grid.coordinates(peak);
    std::vector<std::string> row{std::to_string(i + 1), format_real(pairs[i].lambda),
                                 format_real(pairs[i].residual),
                                 std::to_string(peak), format_real(loc[0])};
    if (grid.dim() == 2) row.push_back(format_real(loc[1]));
    csv.row(row);
  }
  csv.close();
}

std::vector<Real> read_lambda_column(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path.string());
  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
  }
  const auto it = std::find(cols.begin(), cols.end(), "lambda");
  if (it == cols.end()) {
    throw std::runtime_error("no lambda column in " + path.string());
  }
  const std::size_t col = std::size_t(it - cols.begin());
  std::vector<Real> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t i = 0;
    Real v = 0;
    bool found = false;
    while (std::getline(ss, cell, ',')) {
      if (i++ == col) {
        v = std::stod(cell);
        found = true;
        break;
      }
    }
    if (!found) throw std::runtime_error("short CSV row in " + path.string());
    values.push_back(v);
  }
  std::sort(values.begin(), values.end());
  return values;
}

// Potential generation options shared by gen-potential and compare.
struct GenConfig {
  int dim = 1;
  std::vector<int> units;
  std::string generator = "uniform";
  Real lo = 0.0, hi = 4.0;
  Real v0 = 0.0, v1 = 4.0, p1 = 0.5;
  Real sigma = 1.0, d = 0.01;
  std::uint64_t seed = 0;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--dim", dim, "dimension (1 or 2)")->check(CLI::Range(1, 2));
    cmd->add_option("--units", units, "unit cells per axis")->required();
    cmd->add_option("--generator", generator, "uniform | bernoulli | correlated")
        ->check(CLI::IsMember({"uniform", "bernoulli", "correlated"}));
    cmd->add_option("--lo", lo, "uniform lower bound");
    cmd->add_option("--hi", hi, "uniform upper bound");
    cmd->add_option("--v0", v0, "bernoulli value 0");
    cmd->add_option("--v1", v1, "bernoulli value 1");
    cmd->add_option("--p1", p1, "bernoulli probability of v1");
    cmd->add_option("--sigma", sigma, "correlated multiplier scale");
    cmd->add_option("--d", d, "correlated decay / aperture parameter");
    cmd->add_option("--seed", seed, "PRNG seed");
  }

  Potential generate(std::uint64_t use_seed) const {
    if (generator == "uniform") return gen_uniform(effective_units(), lo, hi, use_seed);
    if (generator == "bernoulli") {
      return gen_bernoulli(effective_units(), v0, v1, p1, use_seed);
    }
    if (units.size() != 1) {
      throw std::runtime_error("correlated generator takes a single --units value");
    }
    return dim == 1 ? gen_correlated_1d(units[0], sigma, d, use_seed)
                    : gen_correlated_2d(units[0], sigma, d, use_seed);
  }

  std::vector<int> effective_units() const {
    if (dim == 2 && units.size() == 1) return {units[0], units[0]};
    return units;
  }

  json config_json(std::uint64_t use_seed) const {
    json j{{"dim", dim},          {"units", units}, {"generator", generator},
           {"seed", use_seed}};
    if (generator == "uniform") {
      j["lo"] = lo;
      j["hi"] = hi;
    } else if (generator == "bernoulli") {
      j["v0"] = v0;
      j["v1"] = v1;
      j["p1"] = p1;
    } else {
      j["sigma"] = sigma;
      j["d"] = d;
    }
    return j;
  }
};

struct PipelineResult {
  std::vector<Well> wells;
  std::vector<EigenPair> pairs;
  Real inf_v = 0, inf_w = 0;
  SolveReport landscape_report;
};

// gen -> landscape -> wells -> eigs, writing the compare outputs into dir.
PipelineResult run_compare_single(const Potential& pot, int r, Index k,
                                  Real eig_tol, const fs::path& dir) {
  const Grid grid = make_grid(pot.dim, pot.units, r);
  const DiscreteOperator op(grid, sample_on_grid(pot, grid));
  const LandscapePair pair = compute_landscape(op);
  const auto wells = local_minima(pair.w);
  if (wells.empty()) throw std::runtime_error("effective potential has no wells");

  EigsOptions opts;
  opts.tol = eig_tol;
  const Index want = std::min<Index>(k, Index(wells.size()));
  const auto pairs = smallest_eigenpairs(op, want, opts);

  write_wells_csv(dir / "wells.csv", wells, pot.dim);
  write_eigs_csv(dir / "eigs.csv", pairs);

  {
    CsvWriter csv(dir / "ratio.csv", {"rank", "lambda", "w_min", "ratio"});
    for (Index i = 0; i < want; ++i) {
      csv.row({std::to_string(i + 1), format_real(pairs[i].lambda),
               format_real(wells[i].w_min),
               format_real(pairs[i].lambda / wells[i].w_min)});
    }
    csv.close();
  }
  {
    std::vector<Index> counts;
    for (Index c : {Index(10), Index(25), Index(50), Index(100)}) {
      if (c <= want) counts.push_back(c);
    }
    if (counts.empty()) counts.push_back(want);
    const auto stats = ratio_stats(
        [&] {
          std::vector<Real> ls;
          for (const auto& p : pairs) ls.push_back(p.lambda);
          return ls;
        }(),
        wells, counts);
    CsvWriter csv(dir / "ratio_stats.csv", {"count", "mean", "sd"});
    for (const RatioStat& s : stats) {
      csv.row({std::to_string(s.count), format_real(s.mean), format_real(s.sd)});
    }
    csv.close();
  }
  {
    const MatchReport report = match_locations(wells, pairs);
    CsvWriter csv(dir / "match.csv",
                  {"eig_rank", "well_rank", "distance", "rank_to_rank_distance"});
    for (std::size_t i = 0; i < report.pairs.size(); ++i) {
      const MatchPair& mp = report.pairs[i];
      const Real naive = i < report.rank_to_rank_distance.size()
                             ? report.rank_to_rank_distance[i]
                             : -1.0;
      csv.row({std::to_string(mp.eigen_rank), std::to_string(mp.well_rank),
               format_real(mp.distance), format_real(naive)});
    }
    csv.close();
  }

  PipelineResult result{wells, pairs, 0, 0, pair.solve_report};
  std::tie(result.inf_v, result.inf_w) = lower_bounds(op.v(), pair.w);
  return result;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"localization landscape laboratory"};
  app.require_subcommand(1);

  // ---- gen-potential ----
  auto* gen_cmd = app.add_subcommand("gen-potential", "generate a potential file");
  GenConfig gen_cfg;
  gen_cfg.add_options(gen_cmd);
  std::string gen_out;
  gen_cmd->add_option("--out", gen_out, "output directory")->required();

  // ---- landscape ----
  auto* land_cmd = app.add_subcommand("landscape", "solve Hu = 1 and write u, W");
  std::string land_pot, land_out;
  int land_r = 0;
  Real land_tol = 1e-10;
  bool land_pgm = false;
  land_cmd->add_option("--potential", land_pot, "potential JSON file")->required();
  land_cmd->add_option("--r", land_r, "grid points per unit length");
  land_cmd->add_option("--tol", land_tol, "solver relative residual");
  land_cmd->add_option("--out", land_out, "output directory")->required();
  land_cmd->add_flag("--pgm", land_pgm, "also write 16-bit PGM rasters (2D)");

  // ---- analyze ----
  auto* an_cmd = app.add_subcommand("analyze", "wells, basins, and support regions of W");
  std::string an_w, an_out;
  Real an_alpha = 0;
  bool an_pgm = false;
  an_cmd->add_option("--w", an_w, "effective potential JSON file")->required();
  an_cmd->add_option("--alpha", an_alpha, "sublevel factor (default 1.875 / 1.56)");
  an_cmd->add_option("--out", an_out, "output directory")->required();
  an_cmd->add_flag("--pgm", an_pgm, "also write basin labels as PGM (2D)");

  // ---- eigs ----
  auto* eig_cmd = app.add_subcommand("eigs", "oracle eigenpairs of H");
  std::string eig_pot, eig_out;
  int eig_r = 0;
  Index eig_k = 10;
  Real eig_tol = 1e-8;
  bool eig_save_psi = false;
  bool eig_pgm = false;
  eig_cmd->add_option("--potential", eig_pot, "potential JSON file")->required();
  eig_cmd->add_option("--r", eig_r, "grid points per unit length");
  eig_cmd->add_option("--k", eig_k, "number of eigenpairs");
  eig_cmd->add_option("--tol", eig_tol, "residual tolerance");
  eig_cmd->add_option("--out", eig_out, "output directory")->required();
  eig_cmd->add_flag("--save-psi", eig_save_psi, "write psi_###.json fields");
  eig_cmd->add_flag("--pgm", eig_pgm, "also write psi fields as PGM (2D)");

  // ---- predict ----
  auto* pred_cmd = app.add_subcommand("predict", "eigenvalue and support predictions from W");
  std::string pred_w, pred_out;
  Real pred_alpha = 0;
  Index pred_k = 0;
  pred_cmd->add_option("--w", pred_w, "effective potential JSON file")->required();
  pred_cmd->add_option("--k", pred_k, "number of wells to use (default: all)");
  pred_cmd->add_option("--alpha", pred_alpha, "sublevel factor (default 1.875 / 1.56)");
  pred_cmd->add_option("--out", pred_out, "output directory")->required();

  // ---- compare ----
  auto* cmp_cmd = app.add_subcommand("compare", "predictions vs oracle eigenpairs");
  GenConfig cmp_cfg;
  cmp_cfg.add_options(cmp_cmd);
  std::string cmp_pot, cmp_out, cmp_seeds;
  int cmp_r = 0, cmp_jobs = 1;
  Index cmp_k = 10;
  Real cmp_tol = 1e-8;
  cmp_cmd->add_option("--potential", cmp_pot, "potential JSON file (instead of generator)");
  cmp_cmd->get_option("--units")->required(false);
  cmp_cmd->add_option("--seeds", cmp_seeds, "batch seed range lo:hi (inclusive)");
  cmp_cmd->add_option("--r", cmp_r, "grid points per unit length");
  cmp_cmd->add_option("--k", cmp_k, "eigenpairs per instance");
  cmp_cmd->add_option("--tol", cmp_tol, "eigensolver residual tolerance");
  cmp_cmd->add_option("--jobs", cmp_jobs, "parallel seeds in batch mode");
  cmp_cmd->add_option("--out", cmp_out, "output directory")->required();

  // ---- weyl ----
  auto* weyl_cmd = app.add_subcommand("weyl", "counting functions N, N_V, N_W over an E-grid");
  std::string weyl_pot, weyl_w, weyl_eigs, weyl_out, weyl_range = "0:1";
  int weyl_r = 0, weyl_steps = 100;
  Real weyl_tol = 1e-10;
  weyl_cmd->add_option("--potential", weyl_pot, "potential JSON file")->required();
  weyl_cmd->add_option("--w", weyl_w, "effective potential JSON (computed if absent)");
  weyl_cmd->add_option("--eigs", weyl_eigs, "eigs.csv with true eigenvalues")->required();
  weyl_cmd->add_option("--r", weyl_r, "grid points per unit length");
  weyl_cmd->add_option("--range", weyl_range, "E range lo:hi");
  weyl_cmd->add_option("--steps", weyl_steps, "number of E samples");
  weyl_cmd->add_option("--tol", weyl_tol, "landscape solver tolerance");
  weyl_cmd->add_option("--out", weyl_out, "output directory")->required();

  // ---- dos ----
  auto* dos_cmd = app.add_subcommand("dos", "DOS histograms: true vs landscape-predicted");
  std::string dos_w, dos_eigs, dos_out, dos_range = "0:1";
  Index dos_bins = 50;
  dos_cmd->add_option("--w", dos_w, "effective potential JSON file")->required();
  dos_cmd->add_option("--eigs", dos_eigs, "eigs.csv with true eigenvalues")->required();
  dos_cmd->add_option("--range", dos_range, "histogram range lo:hi");
  dos_cmd->add_option("--bins", dos_bins, "histogram bins");
  dos_cmd->add_option("--out", dos_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (gen_cmd->parsed()) {
    const fs::path dir(gen_out);
    fs::create_directories(dir);
    const Potential pot = gen_cfg.generate(gen_cfg.seed);
    save_potential_json(pot, dir / potential_filename(gen_cfg.seed));
    write_provenance(dir, "gen-potential", gen_cfg.config_json(gen_cfg.seed));
    return 0;
  }

  if (land_cmd->parsed()) {
    const fs::path dir(land_out);
    fs::create_directories(dir);
    const Potential pot = load_potential_json(land_pot);
    const int r = land_r > 0 ? land_r : default_refinement(pot.dim);
    const Grid grid = make_grid(pot.dim, pot.units, r);
    const DiscreteOperator op(grid, sample_on_grid(pot, grid));
    const LandscapePair pair = compute_landscape(op, land_tol);
    save_field_json(pair.u, dir / "u.json");
    save_field_json(pair.w, dir / "w.json");
    if (land_pgm && pot.dim == 2) {
      save_field_pgm(pair.u, dir / "u.pgm");
      save_field_pgm(pair.w, dir / "w.pgm");
    }
    const json config{{"potential", land_pot}, {"r", r}, {"tol", land_tol}};
    const json reports{{"solve", report_of(pair.solve_report)},
                       {"u_min", pair.u.values.minCoeff()},
                       {"u_max", pair.u.values.maxCoeff()},
                       {"v_min", op.min_v()},
                       {"v_max", op.max_v()},
                       {"w_min", pair.w.values.minCoeff()},
                       {"w_max", pair.w.values.maxCoeff()}};
    write_provenance(dir, "landscape", config, reports);
    return 0;
  }

  if (an_cmd->parsed()) {
    const fs::path dir(an_out);
    fs::create_directories(dir);
    const ScalarField w = load_field_json(an_w);
    const Real alpha = an_alpha > 0 ? an_alpha : default_support_alpha(w.grid.dim());
    const auto wells = local_minima(w);
    if (wells.empty()) throw std::runtime_error("effective potential has no wells");
    write_wells_csv(dir / "wells.csv", wells, w.grid.dim());

    const BasinMap basins = watershed_basins(w, wells);
    ArrayXr labels(w.grid.num_points());
    for (Index j = 0; j < labels.size(); ++j) labels[j] = Real(basins.labels[j]);
    const ScalarField label_field(w.grid, labels);
    save_field_json(label_field, dir / "basins.json");
    if (an_pgm && w.grid.dim() == 2) save_field_pgm(label_field, dir / "basins.pgm");

    write_regions_csv(dir / "regions.csv", support_regions(wells, w, alpha));

    Index crest_points = 0;
    for (char c : basins.crest_mask) crest_points += c;
    const json config{{"w", an_w}, {"alpha", alpha}};
    const json reports{{"wells", wells.size()},
                       {"basins", basins.num_basins},
                       {"crest_points", crest_points}};
    write_provenance(dir, "analyze", config, reports);
    return 0;
  }

  if (eig_cmd->parsed()) {
    const fs::path dir(eig_out);
    fs::create_directories(dir);
    const Potential pot = load_potential_json(eig_pot);
    const int r = eig_r > 0 ? eig_r : default_refinement(pot.dim);
    const Grid grid = make_grid(pot.dim, pot.units, r);
    const DiscreteOperator op(grid, sample_on_grid(pot, grid));
    EigsOptions opts;
    opts.tol = eig_tol;
    const auto pairs = smallest_eigenpairs(op, eig_k, opts);
    write_eigs_csv(dir / "eigs.csv", pairs);
    if (eig_save_psi || eig_pgm) {
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        char name[32];
        if (eig_save_psi) {
          std::snprintf(name, sizeof(name), "psi_%03zu.json", i + 1);
          save_field_json(pairs[i].psi, dir / name);
        }
        if (eig_pgm && pot.dim == 2) {
          std::snprintf(name, sizeof(name), "psi_%03zu.pgm", i + 1);
          save_field_pgm(pairs[i].psi, dir / name);
        }
      }
    }
    Real max_residual = 0;
    for (const auto& p : pairs) max_residual = std::max(max_residual, p.residual);
    const json config{{"potential", eig_pot}, {"r", r}, {"k", eig_k}, {"tol", eig_tol}};
    const json reports{{"max_residual", max_residual},
                       {"lambda_1", pairs.front().lambda},
                       {"lambda_k", pairs.back().lambda}};
    write_provenance(dir, "eigs", config, reports);
    return 0;
  }

  if (pred_cmd->parsed()) {
    const fs::path dir(pred_out);
    fs::create_directories(dir);
    const ScalarField w = load_field_json(pred_w);
    const Real alpha = pred_alpha > 0 ? pred_alpha : default_support_alpha(w.grid.dim());
    auto wells = local_minima(w);
    if (wells.empty()) throw std::runtime_error("effective potential has no wells");
    bool truncated = false;
    if (pred_k > 0) {
      if (Index(wells.size()) > pred_k) {
        wells.resize(pred_k);
      } else if (Index(wells.size()) < pred_k) {
        truncated = true;  // fewer wells than requested predictions
      }
    }
    const auto preds = predict_all(wells, w, alpha);
    {
      std::vector<std::string> header{"rank", "index", "x"};
      if (w.grid.dim() == 2) header.push_back("y");
      header.push_back("w_min");
      header.push_back("lambda_hat");
      CsvWriter csv(dir / "predictions.csv", header);
      for (const Prediction& p : preds) {
        std::vector<std::string> row{std::to_string(p.well.rank),
                                     std::to_string(p.well.min_index),
                                     format_real(p.well.min_location[0])};
        if (w.grid.dim() == 2) row.push_back(format_real(p.well.min_location[1]));
        row.push_back(format_real(p.well.w_min));
        row.push_back(format_real(p.lambda_hat));
        csv.row(row);
      }
      csv.close();
    }
    {
      std::vector<Region> regions;
      for (const Prediction& p : preds) regions.push_back(p.support);
      write_regions_csv(dir / "regions.csv", regions);
    }
    const json config{{"w", pred_w}, {"alpha", alpha}, {"k", pred_k}};
    const json reports{{"wells", wells.size()}, {"truncated", truncated}};
    write_provenance(dir, "predict", config, reports);
    return 0;
  }

  if (cmp_cmd->parsed()) {
    const fs::path dir(cmp_out);
    fs::create_directories(dir);

    if (!cmp_pot.empty()) {
      const Potential pot = load_potential_json(cmp_pot);
      const int r = cmp_r > 0 ? cmp_r : default_refinement(pot.dim);
      const auto result = run_compare_single(pot, r, cmp_k, cmp_tol, dir);
      const json config{{"potential", cmp_pot}, {"r", r}, {"k", cmp_k}, {"tol", cmp_tol}};
      const json reports{{"landscape_solve", report_of(result.landscape_report)},
                         {"inf_v", result.inf_v},
                         {"inf_w", result.inf_w},
                         {"wells", result.wells.size()}};
      write_provenance(dir, "compare", config, reports);
      return 0;
    }

    if (cmp_cfg.units.empty()) {
      throw std::runtime_error("compare needs --potential or generator --units");
    }
    std::uint64_t seed_lo = cmp_cfg.seed, seed_hi = cmp_cfg.seed;
    if (!cmp_seeds.empty()) {
      const auto [lo, hi] = parse_range(cmp_seeds);
      seed_lo = std::uint64_t(lo);
      seed_hi = std::uint64_t(hi);
      if (seed_hi < seed_lo) throw std::runtime_error("--seeds range is empty");
    }
    int jobs = std::max(1, cmp_jobs);
    if (const char* cap = std::getenv("LANDSCAPE_LAB_THREADS")) {
      jobs = std::min(jobs, std::max(1, std::atoi(cap)));
    }

    const int r = cmp_r > 0 ? cmp_r : default_refinement(cmp_cfg.dim);
    const std::size_t count = std::size_t(seed_hi - seed_lo + 1);
    std::vector<json> summaries(count);
    std::vector<std::string> failures(count);
    std::mutex failures_mutex;

    auto worker = [&](std::size_t begin, std::size_t step) {
      for (std::size_t i = begin; i < count; i += step) {
        const std::uint64_t seed = seed_lo + i;
        try {
          const fs::path seed_dir = dir / ("seed_" + std::to_string(seed));
          fs::create_directories(seed_dir);
          const Potential pot = cmp_cfg.generate(seed);
          save_potential_json(pot, seed_dir / potential_filename(seed));
          const auto result = run_compare_single(pot, r, cmp_k, cmp_tol, seed_dir);
          Real mean10 = 0;
          const Index m = std::min<Index>(10, Index(result.pairs.size()));
          for (Index q = 0; q < m; ++q) {
            mean10 += result.pairs[q].lambda / result.wells[q].w_min;
          }
          mean10 /= Real(m);
          summaries[i] = {{"seed", seed},
                          {"ratio_mean_10", mean10},
                          {"lambda_1", result.pairs.front().lambda},
                          {"inf_v", result.inf_v},
                          {"inf_w", result.inf_w},
                          {"wells", result.wells.size()}};
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(failures_mutex);
          failures[i] = e.what();
        }
      }
    };
    if (jobs == 1) {
      worker(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < jobs; ++t) pool.emplace_back(worker, std::size_t(t), jobs);
      for (auto& t : pool) t.join();
    }
    for (const std::string& f : failures) {
      if (!f.empty()) throw std::runtime_error("seed failed: " + f);
    }

    CsvWriter csv(dir / "summary.csv",
                  {"seed", "ratio_mean_10", "lambda_1", "inf_v", "inf_w", "wells"});
    for (const json& s : summaries) {
      csv.row({std::to_string(s.at("seed").get<std::uint64_t>()),
               format_real(s.at("ratio_mean_10").get<Real>()),
               format_real(s.at("lambda_1").get<Real>()),
               format_real(s.at("inf_v").get<Real>()),
               format_real(s.at("inf_w").get<Real>()),
               std::to_string(s.at("wells").get<std::size_t>())});
    }
    csv.close();

    json config = cmp_cfg.config_json(seed_lo);
    config["seeds"] = {seed_lo, seed_hi};
    config["r"] = r;
    config["k"] = cmp_k;
    config["tol"] = cmp_tol;
    config["jobs"] = jobs;
    write_provenance(dir, "compare", config, json{{"instances", count}});
    return 0;
  }

  if (weyl_cmd->parsed()) {
    const fs::path dir(weyl_out);
    fs::create_directories(dir);
    const Potential pot = load_potential_json(weyl_pot);
    const int r = weyl_r > 0 ? weyl_r : default_refinement(pot.dim);
    const Grid grid = make_grid(pot.dim, pot.units, r);
    const ScalarField v = sample_on_grid(pot, grid);
    json solve_report = json::object();
    ScalarField w = [&]() {
      if (!weyl_w.empty()) return load_field_json(weyl_w);
      const DiscreteOperator op(grid, v);
      LandscapePair pair = compute_landscape(op, weyl_tol);
      solve_report = report_of(pair.solve_report);
      return std::move(pair.w);
    }();
    if (w.grid != grid) {
      throw std::runtime_error("W grid does not match potential/r");
    }
    const auto lambdas = read_lambda_column(weyl_eigs);
    const auto [e_lo, e_hi] = parse_range(weyl_range);
    if (!(e_hi > e_lo) || weyl_steps < 2) {
      throw std::runtime_error("weyl needs hi > lo and steps >= 2");
    }
    CsvWriter csv(dir / "weyl.csv", {"E", "N", "N_V", "N_W"});
    for (int i = 0; i < weyl_steps; ++i) {
      const Real e = e_lo + (e_hi - e_lo) * Real(i) / Real(weyl_steps - 1);
      csv.row({format_real(e), std::to_string(counting_function(lambdas, e)),
               format_real(weyl_counting(v, e)), format_real(weyl_counting(w, e))});
    }
    csv.close();
    const json config{{"potential", weyl_pot}, {"w", weyl_w},       {"eigs", weyl_eigs},
                      {"r", r},                {"range", weyl_range}, {"steps", weyl_steps}};
    const json reports{{"eigenvalues", lambdas.size()},
                       {"count_valid_up_to", lambdas.empty() ? 0.0 : lambdas.back()},
                       {"landscape_solve", solve_report}};
    write_provenance(dir, "weyl", config, reports);
    return 0;
  }

  if (dos_cmd->parsed()) {
    const fs::path dir(dos_out);
    fs::create_directories(dir);
    const ScalarField w = load_field_json(dos_w);
    const auto lambdas = read_lambda_column(dos_eigs);
    const auto [lo, hi] = parse_range(dos_range);
    const auto wells = local_minima(w);
    const auto predicted = predict_eigenvalues(wells, w.grid.dim());
    const Histogram truth = dos_histogram(lambdas, lo, hi, dos_bins);
    const Histogram guess = dos_histogram(predicted, lo, hi, dos_bins);
    CsvWriter csv(dir / "dos.csv", {"bin_lo", "bin_hi", "count_eigs", "count_landscape"});
    const Real width = (hi - lo) / Real(dos_bins);
    for (Index b = 0; b < dos_bins; ++b) {
      csv.row({format_real(lo + width * Real(b)), format_real(lo + width * Real(b + 1)),
               std::to_string(truth.counts[b]), std::to_string(guess.counts[b])});
    }
    csv.close();
    const json config{{"w", dos_w},
                      {"eigs", dos_eigs},
                      {"range", dos_range},
                      {"bins", dos_bins}};
    const json reports{{"eigenvalues_in_range",
                        std::accumulate(truth.counts.begin(), truth.counts.end(),
                                        std::int64_t(0))},
                       {"predictions_in_range",
                        std::accumulate(guess.counts.begin(), guess.counts.end(),
                                        std::int64_t(0))},
                       {"wells", wells.size()}};
    write_provenance(dir, "dos", config, reports);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
