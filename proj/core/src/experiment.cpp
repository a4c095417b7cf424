#include "loglap/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "loglap/dn_map.hpp"
#include "loglap/forms.hpp"
#include "loglap/fourier.hpp"
#include "loglap/inversion.hpp"
#include "loglap/io.hpp"
#include "loglap/solver.hpp"
#include "loglap/spectrum.hpp"

namespace loglap {

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Per-run plumbing: binds the configured objects, stamps and records every
/// artifact, and assembles the manifest.
struct Runner {
  const ExperimentConfig& cfg;
  RunOptions opt;
  std::filesystem::path dir;
  RunOutcome outcome;

  Runner(const ExperimentConfig& c, const RunOptions& o) : cfg(c), opt(o) {
    dir = opt.out_dir.empty() ? cfg.output : opt.out_dir;
  }

  void log(const std::string& line) const {
    if (opt.verbose) std::cout << "[" << experiment_kind_name(cfg.kind) << "] "
                               << line << "\n";
  }

  /// Lazily creates the output directory, keeping "no outputs on a bad
  /// config" intact: every configuration error fires before the first write.
  void ensure_dir() {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
      throw std::runtime_error("cannot create output directory " + dir.string() +
                               ": " + ec.message());
  }

  void write_csv(const std::string& name, const Eigen::MatrixXd& m) {
    ensure_dir();
    write_matrix_csv(dir / name, m, "config_hash=" + cfg.config_hash);
    outcome.outputs.push_back(name);
  }

  void write_report(const std::string& name, json body) {
    ensure_dir();
    body["schema_version"] = kSchemaVersion;
    body["config_hash"] = cfg.config_hash;
    body["experiment"] = experiment_kind_name(cfg.kind);
    write_text_file(dir / name, body.dump(2) + "\n");
    outcome.outputs.push_back(name);
  }

  void fail(const std::string& report, const std::string& why) {
    outcome.passed = false;
    if (!outcome.detail.empty()) outcome.detail += "; ";
    outcome.detail += (dir / report).string() + ": " + why;
  }

  void finish() {
    ensure_dir();
    json manifest;
    manifest["schema_version"] = kSchemaVersion;
    manifest["config_hash"] = cfg.config_hash;
    manifest["experiment"] = experiment_kind_name(cfg.kind);
    manifest["tool_version"] = kToolVersion;
    manifest["generated_at"] = utc_timestamp();
    manifest["passed"] = outcome.passed;
    manifest["outputs"] = outcome.outputs;
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
    outcome.outputs.push_back("manifest.json");
    if (outcome.passed && outcome.detail.empty())
      outcome.detail = "all checks passed";
  }
};

json json_vector(const std::vector<double>& v) { return json(v); }

/// Binding-phase helper: config-dependent object construction whose failures
/// are schema/domain errors (exit 2), not numerical failures.
template <typename F>
auto bind_or_config_error(const char* path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

CellField zero_load(const Grid& g) {
  CellField F;
  F.support = Support::Omega;
  F.values = Eigen::VectorXd::Zero(g.num_cells());
  return F;
}

std::string field_tag(const CellField& q) {
  std::string bytes;
  bytes.reserve(static_cast<std::size_t>(q.values.size()) * 20);
  for (Eigen::Index i = 0; i < q.values.size(); ++i) {
    bytes += format_double(q.values(i));
    bytes += ',';
  }
  return "q" + hex64(fnv1a64(bytes));
}

json report_diag(const AssemblyReport& rep) {
  json j;
  j["straddle_bound"] = rep.straddle_bound;
  j["max_depth_hits"] = rep.max_depth_hits;
  j["fourier"] = {{"origin_bound", rep.fourier.origin_bound},
                  {"tail_bound", rep.fourier.tail_bound},
                  {"parseval_defect", rep.fourier.parseval_defect}};
  return j;
}

//------------------------------------------------------------------------------
// Experiment bodies
//------------------------------------------------------------------------------

void run_assemble(Runner& r, const Grid& g) {
  const ExperimentConfig& cfg = r.cfg;
  json report;
  report["form"] = cfg.form_name;

  if (cfg.form_name == "log_B0") {
    std::vector<std::string> routes =
        cfg.routes.empty() ? std::vector<std::string>{"singular"} : cfg.routes;
    std::vector<SymmetricForm> forms;
    json route_list = json::array();
    for (const std::string& route : routes) {
      r.log("assembling log_B0 via the " + route + " route");
      SymmetricForm f = route == "singular"
                            ? assemble_log_form(g, cfg.quad, r.opt.threads)
                            : assemble_log_form_fourier(g, cfg.quad, r.opt.threads);
      r.write_csv("form_log_B0_" + route + ".csv", f.matrix);
      json jr;
      jr["route"] = route;
      jr["symmetry_defect"] = max_symmetry_defect(f.matrix);
      jr["diagnostics"] = report_diag(f.report);
      route_list.push_back(jr);
      forms.push_back(std::move(f));
    }
    report["routes"] = route_list;
    if (forms.size() == 2) {
      const double disc =
          max_relative_discrepancy(forms[0].matrix, forms[1].matrix);
      report["route_discrepancy"] = disc;
      report["route_tolerance"] = cfg.tol.route_tolerance;
      if (disc > cfg.tol.route_tolerance)
        r.fail("assemble_report.json",
               "route discrepancy " + format_double(disc) + " exceeds " +
                   format_double(cfg.tol.route_tolerance));
    }
  } else if (cfg.form_name == "mass") {
    r.write_csv("form_mass.csv", mass_matrix(g).matrix);
  } else if (cfg.form_name == "potential") {
    const RegionSet regions = cfg.build_regions_from_config(g);
    const CellField q = bind_or_config_error(
        "/potential", [&] { return cfg.potential.resolve(g, regions); });
    const SymmetricForm f = assemble_potential(g, regions, q);
    r.write_csv("form_potential.csv", f.matrix);
  } else if (cfg.form_name == "fractional_Bs") {
    const SymmetricForm f =
        assemble_fractional_form(g, cfg.frac_s, cfg.quad, r.opt.threads);
    report["s"] = cfg.frac_s;
    report["symmetry_defect"] = max_symmetry_defect(f.matrix);
    report["diagnostics"] = report_diag(f.report);
    r.write_csv("form_fractional_Bs.csv", f.matrix);
  } else if (cfg.form_name == "h0_seminorm") {
    const SymmetricForm f = assemble_h0_form(g, cfg.quad, r.opt.threads);
    report["symmetry_defect"] = max_symmetry_defect(f.matrix);
    report["diagnostics"] = report_diag(f.report);
    r.write_csv("form_h0_seminorm.csv", f.matrix);
  } else if (cfg.form_name == "abslog_gram") {
    const SymmetricForm f = assemble_abslog_gram(g, cfg.quad, r.opt.threads);
    report["symmetry_defect"] = max_symmetry_defect(f.matrix);
    report["diagnostics"] = report_diag(f.report);
    r.write_csv("form_abslog_gram.csv", f.matrix);
  } else {
    throw ConfigError("/params/form", "unknown form kind: " + cfg.form_name);
  }
  r.write_report("assemble_report.json", report);
}

void run_solve(Runner& r, const Grid& g) {
  const ExperimentConfig& cfg = r.cfg;
  const RegionSet regions = cfg.build_regions_from_config(g);
  const CellField q = bind_or_config_error(
      "/potential", [&] { return cfg.potential.resolve(g, regions); });
  const CellField f = bind_or_config_error(
      "/params/data", [&] { return cfg.data->resolve(g, regions); });
  const CellField F = cfg.load.has_value()
                          ? bind_or_config_error(
                                "/params/load",
                                [&] { return cfg.load->resolve(g, regions); })
                          : zero_load(g);

  r.log("assembling the kernel form");
  const SymmetricForm K = assemble_log_form(g, cfg.quad, r.opt.threads);
  const SymmetricForm Q = assemble_potential(g, regions, q);
  ForwardSolver solver(g, regions, K, Q, cfg.tol.solver_tol);

  SymmetricForm gram;
  const SymmetricForm* gram_ptr = nullptr;
  if (cfg.energy_norms) {
    r.log("assembling the energy Gram form");
    gram = assemble_abslog_gram(g, cfg.quad, r.opt.threads);
    gram_ptr = &gram;
  }
  const SolveReport rep = solver.solve(f, F, gram_ptr);

  r.write_csv("solution.csv", rep.u.values);
  json report;
  report["linear_residual"] = rep.linear_residual;
  report["solver_tol"] = cfg.tol.solver_tol;
  report["interior_load_norm"] = rep.interior_load_norm;
  if (cfg.energy_norms) {
    report["energy_norm"] = rep.energy_norm;
    report["data_trace_norm"] = rep.data_trace_norm;
    report["stability_ratio"] = rep.stability_ratio;
  }
  r.write_report("solve_report.json", report);
}

void run_dnmap(Runner& r, const Grid& g) {
  const ExperimentConfig& cfg = r.cfg;
  const RegionSet regions = cfg.build_regions_from_config(g);
  const CellField q = bind_or_config_error(
      "/potential", [&] { return cfg.potential.resolve(g, regions); });
  const SymmetricForm K = assemble_log_form(g, cfg.quad, r.opt.threads);
  const SymmetricForm Q = assemble_potential(g, regions, q);
  const DNMatrix dn = assemble_dn_map(g, regions, K, Q, cfg.potential.tag);

  r.write_csv("dn_matrix.csv", dn.matrix);
  json report;
  report["q_tag"] = dn.q_tag;
  report["grid_hash"] = dn.grid_hash;
  report["rows_w2"] = dn.rows_w2;
  report["cols_w1"] = dn.cols_w1;
  if (dn.rows_w2 == dn.cols_w1) {
    const double defect = dn.symmetry_defect();
    report["symmetry_defect"] = defect;
    report["symmetry_tolerance"] = 1e-10;
    if (defect > 1e-10)
      r.fail("dn_report.json",
             "symmetry defect " + format_double(defect) + " exceeds 1e-10");
  }
  r.write_report("dn_report.json", report);
}

void run_identity(Runner& r, const Grid& g) {
  const ExperimentConfig& cfg = r.cfg;
  const RegionSet regions = cfg.build_regions_from_config(g);
  const CellField q1 = bind_or_config_error(
      "/potential", [&] { return cfg.potential.resolve(g, regions); });
  const CellField q2 = bind_or_config_error(
      "/potential2", [&] { return cfg.potential2.resolve(g, regions); });
  const CellField f1 = bind_or_config_error(
      "/params/data1", [&] { return cfg.data1->resolve(g, regions); });
  const CellField f2 = bind_or_config_error(
      "/params/data2", [&] { return cfg.data2->resolve(g, regions); });

  const SymmetricForm K = assemble_log_form(g, cfg.quad, r.opt.threads);
  const IdentityReport rep =
      integral_identity_residual(g, regions, K, q1, q2, f1, f2);
  const double scale = std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1.0});

  json report;
  report["lhs"] = rep.lhs;
  report["rhs"] = rep.rhs;
  report["residual"] = rep.residual;
  report["relative_residual"] = rep.residual / scale;
  report["tolerance"] = cfg.tol.identity_tol;
  if (rep.residual > cfg.tol.identity_tol * scale)
    r.fail("identity_report.json",
           "identity residual " + format_double(rep.residual / scale) +
               " exceeds " + format_double(cfg.tol.identity_tol));
  r.write_report("identity_report.json", report);
}

void run_monotone(Runner& r, const Grid& g) {
  const ExperimentConfig& cfg = r.cfg;
  const RegionSet regions = cfg.build_regions_from_config(g);
  const CellField q1 = bind_or_config_error(
      "/potential", [&] { return cfg.potential.resolve(g, regions); });
  const CellField q2 = bind_or_config_error(
      "/potential2", [&] { return cfg.potential2.resolve(g, regions); });

  const SymmetricForm K = assemble_log_form(g, cfg.quad, r.opt.threads);
  const DNMatrix dn1 = assemble_dn_map(g, regions, K,
                                       assemble_potential(g, regions, q1),
                                       cfg.potential.tag);
  const DNMatrix dn2 = assemble_dn_map(g, regions, K,
                                       assemble_potential(g, regions, q2),
                                       cfg.potential2.tag);
  const double psd_tol =
      cfg.tol.psd_tol >= 0.0
          ? cfg.tol.psd_tol
          : 1e-8 * std::max(dn2.matrix.diagonal().cwiseAbs().maxCoeff(), 1e-300);
  const MonotonicityVerdict verdict = monotonicity_compare(dn1, dn2, psd_tol);

  json report;
  report["min_eigenvalue"] = verdict.min_eigenvalue;
  report["psd"] = verdict.psd;
  report["tolerance"] = verdict.tolerance;
  if (cfg.expect_psd.has_value()) {
    report["expect_psd"] = *cfg.expect_psd;
    if (verdict.psd != *cfg.expect_psd)
      r.fail("monotone_report.json",
             std::string("semidefinite verdict is ") +
                 (verdict.psd ? "true" : "false") + " but the config expects " +
                 (*cfg.expect_psd ? "true" : "false"));
  }
  r.write_report("monotone_report.json", report);
}

void run_reconstruct(Runner& r, const Grid& g) {
  const ExperimentConfig& cfg = r.cfg;
  const RegionSet regions = cfg.build_regions_from_config(g);
  const CellField q_true = bind_or_config_error(
      "/potential", [&] { return cfg.potential.resolve(g, regions); });

  r.log("assembling the kernel form");
  const SymmetricForm K = assemble_log_form(g, cfg.quad, r.opt.threads);
  const DNMatrix target = assemble_dn_map(
      g, regions, K, assemble_potential(g, regions, q_true), cfg.potential.tag);

  DNCache cache;
  const DNOracle oracle = [&](const CellField& q) {
    const std::string tag = field_tag(q);
    if (auto hit = cache.find(g.hash(), tag)) return *hit;
    const DNMatrix dn =
        assemble_dn_map(g, regions, K, assemble_potential(g, regions, q), tag);
    cache.insert(std::make_shared<DNMatrix>(dn));
    return dn;
  };

  ReconstructionConfig rc;
  rc.a_max = cfg.a_max;
  rc.bis_tol = cfg.tol.bis_tol;
  rc.psd_tol = cfg.tol.psd_tol;
  r.log("running blockwise bisection");
  const ReconstructionResult result =
      reconstruct_potential(oracle, target, g, regions.partition, rc);

  json report;
  report["block_values"] = json_vector(result.block_values);
  json flags = json::array();
  json traces = json::array();
  for (const BlockRecovery& rec : result.blocks) {
    flags.push_back(rec.hit_upper_bound);
    json tr = json::array();
    for (const BisectionStep& st : rec.trace)
      tr.push_back({{"a", st.a}, {"verdict", st.verdict}});
    traces.push_back(tr);
  }
  report["hit_upper_bound"] = flags;
  report["bisection_trace"] = traces;
  report["a_max"] = rc.a_max;
  report["bis_tol"] = rc.bis_tol;
  report["psd_tol_used"] = result.psd_tol_used;

  const bool aligned =
      cfg.potential.kind == PotentialSpec::Kind::BlockValues &&
      cfg.potential.values.size() == regions.partition.size();
  if (aligned) {
    report["truth_block_values"] = json_vector(cfg.potential.values);
    double max_err = 0.0;
    for (std::size_t b = 0; b < result.block_values.size(); ++b)
      max_err = std::max(max_err, std::abs(result.block_values[b] -
                                           cfg.potential.values[b]));
    report["max_error"] = max_err;
    const double tol = std::max(rc.bis_tol, 10.0 * result.psd_tol_used);
    report["roundtrip_tolerance"] = tol;
    if (cfg.expect_roundtrip && max_err > tol)
      r.fail("reconstruction.json", "block error " + format_double(max_err) +
                                        " exceeds " + format_double(tol));
  } else if (cfg.expect_roundtrip) {
    throw ConfigError("/params/expect_roundtrip",
                      "round-trip check needs a block-aligned potential");
  }
  r.write_report("reconstruction.json", report);
}

CellField normalized_block_indicator(const Grid& g, const RegionSet& regions,
                                     int block) {
  if (block < 0 || static_cast<std::size_t>(block) >= regions.partition.size())
    throw std::invalid_argument("block index " + std::to_string(block) +
                                " is outside the partition (" +
                                std::to_string(regions.partition.size()) +
                                " blocks)");
  const std::vector<int>& cells = regions.partition[static_cast<std::size_t>(block)];
  CellField t;
  t.support = Support::Omega;
  t.values = Eigen::VectorXd::Zero(g.num_cells());
  const double measure =
      static_cast<double>(cells.size()) * std::pow(g.h, g.dim);
  for (int i : cells) t.values(i) = 1.0 / std::sqrt(measure);
  return t;
}

void run_runge(Runner& r, const Grid& g) {
  const ExperimentConfig& cfg = r.cfg;
  const RegionSet regions = cfg.build_regions_from_config(g);
  const CellField q = bind_or_config_error(
      "/potential", [&] { return cfg.potential.resolve(g, regions); });

  CellField target;
  if (cfg.target_block.has_value()) {
    target = bind_or_config_error("/params/target/block", [&] {
      return normalized_block_indicator(g, regions, *cfg.target_block);
    });
  } else {
    target = bind_or_config_error("/params/target/values", [&] {
      std::vector<int> omega = regions.omega;
      std::sort(omega.begin(), omega.end());
      if (cfg.target_values.size() != omega.size())
        throw std::invalid_argument(
            "target lists " + std::to_string(cfg.target_values.size()) +
            " values but the interior has " + std::to_string(omega.size()) +
            " cells");
      CellField t;
      t.support = Support::Omega;
      t.values = Eigen::VectorXd::Zero(g.num_cells());
      for (std::size_t k = 0; k < omega.size(); ++k)
        t.values(omega[k]) = cfg.target_values[k];
      return t;
    });
  }

  const SymmetricForm K = assemble_log_form(g, cfg.quad, r.opt.threads);
  const SymmetricForm Q = assemble_potential(g, regions, q);
  ForwardSolver solver(g, regions, K, Q, cfg.tol.solver_tol);
  std::vector<int> basis = regions.w1;
  std::sort(basis.begin(), basis.end());
  const RungeFit fit = runge_fit(solver, target, basis, cfg.tol.alpha);

  r.write_csv("runge_data.csv", fit.f.values);
  r.write_csv("runge_field.csv", fit.u.values);
  json report;
  report["residual"] = fit.residual;
  report["smallest_singular_value"] = fit.smallest_singular_value;
  report["alpha"] = fit.alpha;
  const double vol = std::pow(g.h, g.dim);
  report["target_norm"] = std::sqrt(vol) * target.values.norm();
  r.write_report("runge_report.json", report);
}

void run_localize(Runner& r, const Grid& g) {
  const ExperimentConfig& cfg = r.cfg;
  const RegionSet regions = cfg.build_regions_from_config(g);
  const CellField q = bind_or_config_error(
      "/potential", [&] { return cfg.potential.resolve(g, regions); });
  const std::vector<int> m_cells = bind_or_config_error("/params/block", [&] {
    const int block = *cfg.target_block;
    if (block < 0 || static_cast<std::size_t>(block) >= regions.partition.size())
      throw std::invalid_argument("block index " + std::to_string(block) +
                                  " is outside the partition");
    return regions.partition[static_cast<std::size_t>(block)];
  });

  const SymmetricForm K = assemble_log_form(g, cfg.quad, r.opt.threads);
  const SymmetricForm Q = assemble_potential(g, regions, q);
  ForwardSolver solver(g, regions, K, Q, cfg.tol.solver_tol);
  std::vector<int> basis = regions.w1;
  std::sort(basis.begin(), basis.end());
  const std::vector<LocalizationStep> seq = localized_potential(
      solver, m_cells, basis, cfg.steps, cfg.alpha0, cfg.alpha_decay);

  json steps = json::array();
  bool increasing = true;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    steps.push_back({{"alpha", seq[k].alpha},
                     {"ratio", seq[k].ratio},
                     {"complement_norm", seq[k].complement_norm}});
    if (k > 0 && !(seq[k].ratio > seq[k - 1].ratio)) increasing = false;
  }
  const double growth =
      seq.size() >= 2 ? seq.back().ratio / seq.front().ratio : 1.0;

  json report;
  report["steps"] = steps;
  report["steps_requested"] = cfg.steps;
  report["ratios_strictly_increasing"] = increasing;
  report["growth_factor"] = growth;
  if (cfg.expect_growth.has_value()) {
    report["expect_growth"] = *cfg.expect_growth;
    if (!increasing)
      r.fail("localize_report.json", "concentration ratios are not increasing");
    if (growth < *cfg.expect_growth)
      r.fail("localize_report.json",
             "growth factor " + format_double(growth) + " is below " +
                 format_double(*cfg.expect_growth));
  }
  r.write_report("localize_report.json", report);
}

void run_spectrum(Runner& r, const Grid& g) {
  const ExperimentConfig& cfg = r.cfg;
  const RegionSet regions = cfg.build_regions_from_config(g);
  std::vector<int> omega = regions.omega;
  std::sort(omega.begin(), omega.end());
  if (cfg.eig_count > static_cast<int>(omega.size()))
    throw ConfigError("/params/count",
                      "requested more eigenvalues than interior cells");

  const SymmetricForm K = assemble_log_form(g, cfg.quad, r.opt.threads);
  json report;
  std::vector<double> eigenvalues;
  if (cfg.has_potential) {
    const CellField q = bind_or_config_error(
        "/potential", [&] { return cfg.potential.resolve(g, regions); });
    const SymmetricForm Q = assemble_potential(g, regions, q);
    const SpectrumReport rep = coercivity_check(g, K, Q, omega);
    eigenvalues.assign(rep.eigenvalues.begin(),
                       rep.eigenvalues.begin() + cfg.eig_count);
    report["lambda0_margin"] = rep.lambda0_margin;
    report["condition_satisfied"] = rep.condition_satisfied;
    report["min_block_eigenvalue"] = rep.min_block_eigenvalue;
    report["block_positive_definite"] = rep.block_positive_definite;
    report["condition_agrees_with_block"] =
        rep.condition_satisfied == rep.block_positive_definite;
  } else {
    const SymmetricForm mass = mass_matrix(g);
    const SpectrumReport rep = dirichlet_spectrum(K, mass, omega, cfg.eig_count);
    eigenvalues = rep.eigenvalues;
    report["lambda0_margin"] = rep.lambda0_margin;
    report["condition_satisfied"] = rep.condition_satisfied;
  }
  report["eigenvalues"] = json_vector(eigenvalues);

  Eigen::MatrixXd col(static_cast<Eigen::Index>(eigenvalues.size()), 1);
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    col(static_cast<Eigen::Index>(i), 0) = eigenvalues[i];
  r.write_csv("eigenvalues.csv", col);
  r.write_report("spectrum_report.json", report);
}

void run_fraclimit(Runner& r, const Grid& g) {
  const ExperimentConfig& cfg = r.cfg;
  r.log("assembling the kernel family");
  const std::vector<ExpansionRow> rows =
      fractional_expansion_check(g, cfg.s_list, cfg.quad, r.opt.threads);

  Eigen::MatrixXd table(static_cast<Eigen::Index>(rows.size()), 2);
  json jrows = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table(static_cast<Eigen::Index>(i), 0) = rows[i].s;
    table(static_cast<Eigen::Index>(i), 1) = rows[i].max_entry_error;
    jrows.push_back({{"s", rows[i].s}, {"max_entry_error", rows[i].max_entry_error}});
  }
  r.write_csv("fraclimit.csv", table);

  json report;
  report["rows"] = jrows;
  if (cfg.decay_factor.has_value()) {
    report["decay_factor"] = *cfg.decay_factor;
    bool ok = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i].max_entry_error > *cfg.decay_factor * rows[i - 1].max_entry_error)
        ok = false;
    report["decay_ok"] = ok;
    if (!ok)
      r.fail("fraclimit_report.json",
             "expansion error does not decay by the configured factor");
  }
  r.write_report("fraclimit_report.json", report);
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& cfg, const RunOptions& opt) {
  if (opt.threads < 1) throw std::invalid_argument("thread count must be >= 1");
  Runner runner(cfg, opt);
  const Grid g = cfg.build_grid_from_config();

  switch (cfg.kind) {
    case ExperimentKind::Assemble: run_assemble(runner, g); break;
    case ExperimentKind::Solve: run_solve(runner, g); break;
    case ExperimentKind::DNMap: run_dnmap(runner, g); break;
    case ExperimentKind::Identity: run_identity(runner, g); break;
    case ExperimentKind::Monotone: run_monotone(runner, g); break;
    case ExperimentKind::Reconstruct: run_reconstruct(runner, g); break;
    case ExperimentKind::Runge: run_runge(runner, g); break;
    case ExperimentKind::Localize: run_localize(runner, g); break;
    case ExperimentKind::Spectrum: run_spectrum(runner, g); break;
    case ExperimentKind::FracLimit: run_fraclimit(runner, g); break;
  }
  runner.finish();
  return runner.outcome;
}

}  // namespace loglap
