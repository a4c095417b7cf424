#include "loglap/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "loglap/io.hpp"

namespace loglap {

using nlohmann::json;

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

std::string experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Assemble: return "assemble";
    case ExperimentKind::Solve: return "solve";
    case ExperimentKind::DNMap: return "dnmap";
    case ExperimentKind::Identity: return "identity";
    case ExperimentKind::Monotone: return "monotone";
    case ExperimentKind::Reconstruct: return "reconstruct";
    case ExperimentKind::Runge: return "runge";
    case ExperimentKind::Localize: return "localize";
    case ExperimentKind::Spectrum: return "spectrum";
    case ExperimentKind::FracLimit: return "fraclimit";
  }
  throw std::logic_error("unreachable experiment kind");
}

ExperimentKind experiment_kind_from_name(const std::string& name) {
  static const std::pair<const char*, ExperimentKind> table[] = {
      {"assemble", ExperimentKind::Assemble},
      {"solve", ExperimentKind::Solve},
      {"dnmap", ExperimentKind::DNMap},
      {"identity", ExperimentKind::Identity},
      {"monotone", ExperimentKind::Monotone},
      {"reconstruct", ExperimentKind::Reconstruct},
      {"runge", ExperimentKind::Runge},
      {"localize", ExperimentKind::Localize},
      {"spectrum", ExperimentKind::Spectrum},
      {"fraclimit", ExperimentKind::FracLimit},
  };
  for (const auto& [n, k] : table)
    if (name == n) return k;
  throw std::invalid_argument("unknown experiment kind: " + name);
}

namespace {

//------------------------------------------------------------------------------
// Strict-schema helpers: every object is walked with an explicit key set and
// unknown keys are rejected with their JSON-pointer path.
//------------------------------------------------------------------------------

class Walker {
 public:
  Walker(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }
  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &(*it);
  }
  const json& require(const std::string& key) {
    const json* p = find(key);
    if (p == nullptr)
      throw ConfigError(path_ + "/" + key, "missing required field");
    return *p;
  }
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (seen_.find(it.key()) == seen_.end())
        throw ConfigError(path_ + "/" + it.key(), "unknown field");
  }
  std::string sub(const std::string& key) const { return path_ + "/" + key; }
  const std::string& path() const { return path_; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path, "expected a boolean");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> as_number_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_number(j[i], path + "/" + std::to_string(i)));
  return out;
}

std::vector<int> as_int_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of integers");
  std::vector<int> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_int(j[i], path + "/" + std::to_string(i)));
  return out;
}

//------------------------------------------------------------------------------
// Section parsers
//------------------------------------------------------------------------------

void parse_grid(const json& j, const std::string& path, ExperimentConfig& cfg) {
  Walker w(j, path);
  const std::vector<double> mins = as_number_array(w.require("min"), w.sub("min"));
  const std::vector<double> maxs = as_number_array(w.require("max"), w.sub("max"));
  const std::vector<int> cells = as_int_array(w.require("cells"), w.sub("cells"));
  w.finish();
  if (mins.size() != maxs.size() || mins.size() != cells.size())
    throw ConfigError(path, "min, max and cells must have equal lengths");
  if (mins.empty() || mins.size() > 2)
    throw ConfigError(path, "dimension must be 1 or 2");
  cfg.dim = static_cast<int>(mins.size());
  cfg.box_min = {mins[0], cfg.dim == 2 ? mins[1] : 0.0};
  cfg.box_max = {maxs[0], cfg.dim == 2 ? maxs[1] : 0.0};
  cfg.cells = {cells[0], cfg.dim == 2 ? cells[1] : 1};
  for (int d = 0; d < cfg.dim; ++d)
    if (cfg.cells[static_cast<std::size_t>(d)] < 1)
      throw ConfigError(w.sub("cells"), "cell counts must be positive");
}

CellSelector parse_selector(const json& j, const std::string& path, int dim) {
  Walker w(j, path);
  const json* box = w.find("box");
  const json* cells = w.find("cells");
  w.finish();
  if ((box != nullptr) == (cells != nullptr))
    throw ConfigError(path, "exactly one of 'box' or 'cells' is required");
  CellSelector sel;
  if (box != nullptr) {
    Walker wb(*box, w.sub("box"));
    const std::vector<double> lo = as_number_array(wb.require("min"), wb.sub("min"));
    const std::vector<double> hi = as_number_array(wb.require("max"), wb.sub("max"));
    wb.finish();
    if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
      throw ConfigError(w.sub("box"), "box arrays must match the grid dimension");
    sel.by_box = true;
    sel.lo = {lo[0], dim == 2 ? lo[1] : 0.0};
    sel.hi = {hi[0], dim == 2 ? hi[1] : 0.0};
  } else {
    sel.cells = as_int_array(*cells, w.sub("cells"));
    if (sel.cells.empty())
      throw ConfigError(w.sub("cells"), "cell list must be nonempty");
  }
  return sel;
}

void parse_regions(const json& j, const std::string& path, ExperimentConfig& cfg) {
  Walker w(j, path);
  if (const json* p = w.find("omega"))
    cfg.omega = parse_selector(*p, w.sub("omega"), cfg.dim);
  if (const json* p = w.find("w1"))
    cfg.w1 = parse_selector(*p, w.sub("w1"), cfg.dim);
  if (const json* p = w.find("w2"))
    cfg.w2 = parse_selector(*p, w.sub("w2"), cfg.dim);
  if (const json* p = w.find("partition_blocks")) {
    cfg.partition_blocks = as_int(*p, w.sub("partition_blocks"));
    if (cfg.partition_blocks < 1)
      throw ConfigError(w.sub("partition_blocks"), "must be at least 1");
  }
  w.finish();
}

void parse_quadrature(const json& j, const std::string& path,
                      ExperimentConfig& cfg) {
  Walker w(j, path);
  if (const json* p = w.find("gauss_order"))
    cfg.quad.gauss_order = as_int(*p, w.sub("gauss_order"));
  if (const json* p = w.find("subdivision_depth"))
    cfg.quad.subdivision_depth = as_int(*p, w.sub("subdivision_depth"));
  if (const json* p = w.find("fourier_truncation_radius"))
    cfg.quad.fourier_truncation_radius = as_number(*p, w.sub("fourier_truncation_radius"));
  if (const json* p = w.find("fourier_points"))
    cfg.quad.fourier_points = as_int(*p, w.sub("fourier_points"));
  if (const json* p = w.find("origin_exclusion"))
    cfg.quad.origin_exclusion = as_number(*p, w.sub("origin_exclusion"));
  w.finish();
  try {
    cfg.quad.validate();
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

PotentialSpec parse_potential(const json& j, const std::string& path) {
  Walker w(j, path);
  const json* constant = w.find("constant");
  const json* blocks = w.find("block_values");
  const json* cells = w.find("cell_values");
  w.finish();
  const int given = (constant != nullptr) + (blocks != nullptr) + (cells != nullptr);
  if (given != 1)
    throw ConfigError(path,
                      "exactly one of 'constant', 'block_values' or "
                      "'cell_values' is required");
  PotentialSpec spec;
  if (constant != nullptr) {
    spec.kind = PotentialSpec::Kind::Constant;
    spec.constant = as_number(*constant, w.sub("constant"));
  } else if (blocks != nullptr) {
    spec.kind = PotentialSpec::Kind::BlockValues;
    spec.values = as_number_array(*blocks, w.sub("block_values"));
    if (spec.values.empty())
      throw ConfigError(w.sub("block_values"), "must be nonempty");
  } else {
    spec.kind = PotentialSpec::Kind::CellValues;
    spec.values = as_number_array(*cells, w.sub("cell_values"));
    if (spec.values.empty())
      throw ConfigError(w.sub("cell_values"), "must be nonempty");
  }
  spec.tag = "q" + hex64(fnv1a64(j.dump()));
  return spec;
}

DataSpec parse_data(const json& j, const std::string& path,
                    Support default_support, bool allow_support_key) {
  Walker w(j, path);
  DataSpec spec;
  spec.support = default_support;
  if (allow_support_key) {
    if (const json* p = w.find("support")) {
      const std::string s = as_string(*p, w.sub("support"));
      if (s == "w1")
        spec.support = Support::W1;
      else if (s == "w2")
        spec.support = Support::W2;
      else if (s == "exterior")
        spec.support = Support::Exterior;
      else
        throw ConfigError(w.sub("support"),
                          "must be one of 'w1', 'w2', 'exterior'");
    }
  }
  const json* constant = w.find("constant");
  const json* values = w.find("values");
  w.finish();
  if ((constant != nullptr) == (values != nullptr))
    throw ConfigError(path, "exactly one of 'constant' or 'values' is required");
  if (constant != nullptr) {
    spec.constant_given = true;
    spec.constant = as_number(*constant, w.sub("constant"));
  } else {
    spec.constant_given = false;
    spec.values = as_number_array(*values, w.sub("values"));
    if (spec.values.empty())
      throw ConfigError(w.sub("values"), "must be nonempty");
  }
  return spec;
}

void parse_tolerances(const json& j, const std::string& path,
                      ExperimentConfig& cfg) {
  Walker w(j, path);
  if (const json* p = w.find("psd_tol"))
    cfg.tol.psd_tol = as_number(*p, w.sub("psd_tol"));
  if (const json* p = w.find("bis_tol")) {
    cfg.tol.bis_tol = as_number(*p, w.sub("bis_tol"));
    if (!(cfg.tol.bis_tol > 0.0))
      throw ConfigError(w.sub("bis_tol"), "must be positive");
  }
  if (const json* p = w.find("solver_tol")) {
    cfg.tol.solver_tol = as_number(*p, w.sub("solver_tol"));
    if (!(cfg.tol.solver_tol > 0.0))
      throw ConfigError(w.sub("solver_tol"), "must be positive");
  }
  if (const json* p = w.find("alpha")) {
    cfg.tol.alpha = as_number(*p, w.sub("alpha"));
    if (!(cfg.tol.alpha >= 0.0))
      throw ConfigError(w.sub("alpha"), "must be nonnegative");
  }
  if (const json* p = w.find("identity_tol")) {
    cfg.tol.identity_tol = as_number(*p, w.sub("identity_tol"));
    if (!(cfg.tol.identity_tol > 0.0))
      throw ConfigError(w.sub("identity_tol"), "must be positive");
  }
  if (const json* p = w.find("route_tolerance")) {
    cfg.tol.route_tolerance = as_number(*p, w.sub("route_tolerance"));
    if (!(cfg.tol.route_tolerance > 0.0))
      throw ConfigError(w.sub("route_tolerance"), "must be positive");
  }
  w.finish();
}

void parse_params(const json& j, const std::string& path, ExperimentConfig& cfg) {
  Walker w(j, path);
  switch (cfg.kind) {
    case ExperimentKind::Assemble: {
      if (const json* p = w.find("form")) {
        cfg.form_name = as_string(*p, w.sub("form"));
        static const char* known[] = {"log_B0",        "mass",
                                      "potential",     "fractional_Bs",
                                      "abslog_gram",   "h0_seminorm"};
        if (std::find_if(std::begin(known), std::end(known), [&](const char* n) {
              return cfg.form_name == n;
            }) == std::end(known))
          throw ConfigError(w.sub("form"), "unknown form kind: " + cfg.form_name);
      }
      if (const json* p = w.find("s")) {
        cfg.frac_s = as_number(*p, w.sub("s"));
        if (!(cfg.frac_s > 0.0 && cfg.frac_s < 0.5))
          throw ConfigError(w.sub("s"), "must lie in (0, 1/2)");
      } else if (cfg.form_name == "fractional_Bs") {
        throw ConfigError(w.sub("s"), "missing required field for fractional_Bs");
      }
      if (const json* p = w.find("routes")) {
        if (cfg.form_name != "log_B0")
          throw ConfigError(w.sub("routes"),
                            "route selection applies to log_B0 only");
        if (!p->is_array()) throw ConfigError(w.sub("routes"), "expected an array");
        for (std::size_t i = 0; i < p->size(); ++i) {
          const std::string r =
              as_string((*p)[i], w.sub("routes") + "/" + std::to_string(i));
          if (r != "singular" && r != "fourier")
            throw ConfigError(w.sub("routes") + "/" + std::to_string(i),
                              "must be 'singular' or 'fourier'");
          cfg.routes.push_back(r);
        }
        if (cfg.routes.empty())
          throw ConfigError(w.sub("routes"), "must list at least one route");
        if (std::set<std::string>(cfg.routes.begin(), cfg.routes.end()).size() !=
            cfg.routes.size())
          throw ConfigError(w.sub("routes"), "routes must be distinct");
      }
      break;
    }
    case ExperimentKind::Solve: {
      cfg.data = parse_data(w.require("data"), w.sub("data"), Support::W1, true);
      if (const json* p = w.find("load"))
        cfg.load = parse_data(*p, w.sub("load"), Support::Omega, false);
      if (const json* p = w.find("energy_norms"))
        cfg.energy_norms = as_bool(*p, w.sub("energy_norms"));
      break;
    }
    case ExperimentKind::DNMap:
      break;
    case ExperimentKind::Identity: {
      cfg.data1 = parse_data(w.require("data1"), w.sub("data1"), Support::W1, false);
      cfg.data2 = parse_data(w.require("data2"), w.sub("data2"), Support::W2, false);
      break;
    }
    case ExperimentKind::Monotone: {
      if (const json* p = w.find("expect_psd"))
        cfg.expect_psd = as_bool(*p, w.sub("expect_psd"));
      break;
    }
    case ExperimentKind::Reconstruct: {
      if (const json* p = w.find("a_max")) {
        cfg.a_max = as_number(*p, w.sub("a_max"));
        if (!(cfg.a_max > 0.0))
          throw ConfigError(w.sub("a_max"), "must be positive");
      }
      if (const json* p = w.find("expect_roundtrip"))
        cfg.expect_roundtrip = as_bool(*p, w.sub("expect_roundtrip"));
      break;
    }
    case ExperimentKind::Runge: {
      const json& t = w.require("target");
      Walker wt(t, w.sub("target"));
      const json* block = wt.find("block");
      const json* values = wt.find("values");
      wt.finish();
      if ((block != nullptr) == (values != nullptr))
        throw ConfigError(w.sub("target"),
                          "exactly one of 'block' or 'values' is required");
      if (block != nullptr) {
        cfg.target_block = as_int(*block, wt.sub("block"));
        if (*cfg.target_block < 0)
          throw ConfigError(wt.sub("block"), "must be a partition block index");
      } else {
        cfg.target_values = as_number_array(*values, wt.sub("values"));
        if (cfg.target_values.empty())
          throw ConfigError(wt.sub("values"), "must be nonempty");
      }
      break;
    }
    case ExperimentKind::Localize: {
      cfg.target_block = as_int(w.require("block"), w.sub("block"));
      if (*cfg.target_block < 0)
        throw ConfigError(w.sub("block"), "must be a partition block index");
      if (const json* p = w.find("steps")) {
        cfg.steps = as_int(*p, w.sub("steps"));
        if (cfg.steps < 1) throw ConfigError(w.sub("steps"), "must be at least 1");
      }
      if (const json* p = w.find("alpha0")) {
        cfg.alpha0 = as_number(*p, w.sub("alpha0"));
        if (!(cfg.alpha0 > 0.0)) throw ConfigError(w.sub("alpha0"), "must be positive");
      }
      if (const json* p = w.find("alpha_decay")) {
        cfg.alpha_decay = as_number(*p, w.sub("alpha_decay"));
        if (!(cfg.alpha_decay > 0.0 && cfg.alpha_decay < 1.0))
          throw ConfigError(w.sub("alpha_decay"), "must lie in (0, 1)");
      }
      if (const json* p = w.find("expect_growth")) {
        cfg.expect_growth = as_number(*p, w.sub("expect_growth"));
        if (!(*cfg.expect_growth > 0.0))
          throw ConfigError(w.sub("expect_growth"), "must be positive");
      }
      break;
    }
    case ExperimentKind::Spectrum: {
      if (const json* p = w.find("count")) {
        cfg.eig_count = as_int(*p, w.sub("count"));
        if (cfg.eig_count < 1)
          throw ConfigError(w.sub("count"), "must be at least 1");
      }
      break;
    }
    case ExperimentKind::FracLimit: {
      cfg.s_list = as_number_array(w.require("s_list"), w.sub("s_list"));
      if (cfg.s_list.empty())
        throw ConfigError(w.sub("s_list"), "must be nonempty");
      for (double s : cfg.s_list)
        if (!(s > 0.0 && s < 0.5))
          throw ConfigError(w.sub("s_list"), "every order must lie in (0, 1/2)");
      if (const json* p = w.find("decay_factor")) {
        cfg.decay_factor = as_number(*p, w.sub("decay_factor"));
        if (!(*cfg.decay_factor > 0.0 && *cfg.decay_factor < 1.0))
          throw ConfigError(w.sub("decay_factor"), "must lie in (0, 1)");
      }
      break;
    }
  }
  w.finish();
}

/// Presence requirements that depend on the experiment kind; enforced at
/// parse time so a bad config never produces output files.
void check_requirements(const ExperimentConfig& cfg) {
  const auto need = [&](bool ok, const std::string& path, const char* msg) {
    if (!ok) throw ConfigError(path, msg);
  };
  const bool needs_omega =
      cfg.kind != ExperimentKind::FracLimit &&
      !(cfg.kind == ExperimentKind::Assemble && cfg.form_name != "potential");
  if (needs_omega)
    need(cfg.omega.has_value(), "/regions/omega",
         "this experiment requires an interior region");
  switch (cfg.kind) {
    case ExperimentKind::Solve:
      break;
    case ExperimentKind::DNMap:
    case ExperimentKind::Identity:
    case ExperimentKind::Monotone:
    case ExperimentKind::Reconstruct:
      need(cfg.w1.has_value(), "/regions/w1", "this experiment requires a data window");
      need(cfg.w2.has_value(), "/regions/w2",
           "this experiment requires a measurement window");
      break;
    case ExperimentKind::Runge:
    case ExperimentKind::Localize:
      need(cfg.w1.has_value(), "/regions/w1",
           "this experiment requires a data window (the fit basis)");
      break;
    default:
      break;
  }
  if (cfg.kind == ExperimentKind::Identity || cfg.kind == ExperimentKind::Monotone) {
    need(cfg.has_potential, "/potential", "this experiment requires a potential");
    need(cfg.has_potential2, "/potential2",
         "this experiment requires a second potential");
  }
  if (cfg.kind == ExperimentKind::Reconstruct)
    need(cfg.has_potential, "/potential",
         "reconstruction requires the generating potential");
  if (cfg.kind == ExperimentKind::Assemble && cfg.form_name == "potential")
    need(cfg.has_potential, "/potential",
         "assembling the potential form requires a potential");
  if (cfg.data.has_value() && cfg.data->support == Support::W1)
    need(cfg.w1.has_value(), "/regions/w1", "data is declared on the w1 window");
  if (cfg.data.has_value() && cfg.data->support == Support::W2)
    need(cfg.w2.has_value(), "/regions/w2", "data is declared on the w2 window");
  if (cfg.kind == ExperimentKind::Identity) {
    need(cfg.w1.has_value(), "/regions/w1", "this experiment requires a data window");
    need(cfg.w2.has_value(), "/regions/w2",
         "this experiment requires a measurement window");
  }
}

}  // namespace

std::vector<int> CellSelector::resolve(const Grid& g) const {
  if (by_box) return cells_in_box(g, lo, hi);
  return cells;
}

CellField PotentialSpec::resolve(const Grid& g, const RegionSet& r) const {
  CellField q;
  q.support = Support::Omega;
  q.values = Eigen::VectorXd::Zero(g.num_cells());
  std::vector<int> omega = r.omega;
  std::sort(omega.begin(), omega.end());
  switch (kind) {
    case Kind::Zero:
      break;
    case Kind::Constant:
      for (int i : omega) q.values(i) = constant;
      break;
    case Kind::BlockValues: {
      if (values.size() != r.partition.size())
        throw std::invalid_argument(
            "potential lists " + std::to_string(values.size()) +
            " block values but the partition has " +
            std::to_string(r.partition.size()) + " blocks");
      for (std::size_t b = 0; b < r.partition.size(); ++b)
        for (int i : r.partition[b]) q.values(i) = values[b];
      break;
    }
    case Kind::CellValues: {
      if (values.size() != omega.size())
        throw std::invalid_argument(
            "potential lists " + std::to_string(values.size()) +
            " cell values but the interior has " +
            std::to_string(omega.size()) + " cells");
      for (std::size_t k = 0; k < omega.size(); ++k)
        q.values(omega[k]) = values[k];
      break;
    }
  }
  return q;
}

CellField DataSpec::resolve(const Grid& g, const RegionSet& r) const {
  CellField f;
  f.support = support;
  f.values = Eigen::VectorXd::Zero(g.num_cells());
  std::vector<int> cells = support_cells(g, r, support);
  std::sort(cells.begin(), cells.end());
  if (constant_given) {
    for (int i : cells) f.values(i) = constant;
  } else {
    if (values.size() != cells.size())
      throw std::invalid_argument(
          "data lists " + std::to_string(values.size()) +
          " values but the support has " + std::to_string(cells.size()) +
          " cells");
    for (std::size_t k = 0; k < cells.size(); ++k) f.values(cells[k]) = values[k];
  }
  return f;
}

Grid ExperimentConfig::build_grid_from_config() const {
  try {
    return loglap::build_grid(box_min, box_max, cells, dim);
  } catch (const std::exception& e) {
    throw ConfigError("/grid", e.what());
  }
}

RegionSet ExperimentConfig::build_regions_from_config(const Grid& g) const {
  try {
    std::vector<int> om = omega.has_value() ? omega->resolve(g) : std::vector<int>{};
    std::sort(om.begin(), om.end());
    std::vector<std::vector<int>> partition;
    if (!om.empty()) partition = equal_blocks(om, partition_blocks);
    return define_regions(g, std::move(om),
                          w1.has_value() ? w1->resolve(g) : std::vector<int>{},
                          w2.has_value() ? w2->resolve(g) : std::vector<int>{},
                          std::move(partition));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("/regions", e.what());
  }
}

ExperimentConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("/", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("/", "top level must be an object");

  ExperimentConfig cfg;
  Walker w(j, "");
  const std::string kind_name = as_string(w.require("experiment"), "/experiment");
  try {
    cfg.kind = experiment_kind_from_name(kind_name);
  } catch (const std::exception& e) {
    throw ConfigError("/experiment", e.what());
  }

  parse_grid(w.require("grid"), "/grid", cfg);
  cfg.quad = QuadratureSpec::defaults_for(cfg.dim);
  if (const json* p = w.find("quadrature")) {
    cfg.quad_given = true;
    parse_quadrature(*p, "/quadrature", cfg);
  }
  if (const json* p = w.find("regions")) parse_regions(*p, "/regions", cfg);
  if (const json* p = w.find("potential")) {
    cfg.potential = parse_potential(*p, "/potential");
    cfg.has_potential = true;
  }
  if (const json* p = w.find("potential2")) {
    cfg.potential2 = parse_potential(*p, "/potential2");
    cfg.has_potential2 = true;
  }
  if (const json* p = w.find("tolerances")) parse_tolerances(*p, "/tolerances", cfg);
  if (const json* p = w.find("output")) cfg.output = as_string(*p, "/output");

  if (const json* p = w.find("params")) {
    parse_params(*p, "/params", cfg);
  } else {
    // Kinds with required parameters cannot omit the params object.
    static const json empty = json::object();
    parse_params(empty, "/params", cfg);
  }
  w.finish();

  check_requirements(cfg);
  cfg.config_hash = hex64(fnv1a64(j.dump()));
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    throw ConfigError("/", e.what());
  }
  return parse_config_text(text);
}

}  // namespace loglap
