#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "loglap/grid.hpp"
#include "loglap/quadrature.hpp"

namespace loglap {

/// Schema violation in an experiment configuration.  Carries the
/// JSON-pointer-style path of the offending field; the CLI maps this error
/// to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class ExperimentKind {
  Assemble,
  Solve,
  DNMap,
  Identity,
  Monotone,
  Reconstruct,
  Runge,
  Localize,
  Spectrum,
  FracLimit,
};

std::string experiment_kind_name(ExperimentKind kind);
ExperimentKind experiment_kind_from_name(const std::string& name);

/// Cell-set selector: either all cells whose centers lie in a closed box, or
/// an explicit index list.
struct CellSelector {
  bool by_box = false;
  std::array<double, 2> lo{{0.0, 0.0}};
  std::array<double, 2> hi{{0.0, 0.0}};
  std::vector<int> cells;

  std::vector<int> resolve(const Grid& g) const;
};

/// A potential on the interior region: zero, a constant, one value per
/// partition block, or one value per interior cell (ascending cell order).
struct PotentialSpec {
  enum class Kind { Zero, Constant, BlockValues, CellValues };
  Kind kind = Kind::Zero;
  double constant = 0.0;
  std::vector<double> values;
  /// Stable identifier derived from the content; used as the cache tag.
  std::string tag = "q0";

  CellField resolve(const Grid& g, const RegionSet& r) const;
};

/// Exterior data or interior load: a constant on the support cells or one
/// value per support cell (ascending cell order).
struct DataSpec {
  Support support = Support::W1;
  bool constant_given = true;
  double constant = 1.0;
  std::vector<double> values;

  CellField resolve(const Grid& g, const RegionSet& r) const;
};

struct ToleranceSet {
  double psd_tol = -1.0;  ///< negative = automatic (scaled to the target)
  double bis_tol = 1e-3;
  double solver_tol = 1e-10;
  double alpha = 1e-8;
  double identity_tol = 1e-9;
  double route_tolerance = 1e-3;
};

/// Parsed and schema-checked experiment description.  Field meanings are
/// documented in the README schema table; unknown JSON fields are rejected
/// at parse time with their path.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Assemble;

  std::array<double, 2> box_min{{0.0, 0.0}};
  std::array<double, 2> box_max{{0.0, 0.0}};
  std::array<int, 2> cells{{0, 1}};
  int dim = 1;

  std::optional<CellSelector> omega, w1, w2;
  int partition_blocks = 1;

  QuadratureSpec quad;
  bool quad_given = false;

  PotentialSpec potential, potential2;
  bool has_potential = false, has_potential2 = false;

  ToleranceSet tol;
  std::string output = ".";

  // assemble
  std::string form_name = "log_B0";
  double frac_s = 0.25;
  std::vector<std::string> routes;

  // solve / identity
  std::optional<DataSpec> data, load, data1, data2;
  bool energy_norms = false;

  // monotone
  std::optional<bool> expect_psd;

  // reconstruct
  double a_max = 2.0;
  bool expect_roundtrip = false;

  // runge / localize
  std::optional<int> target_block;
  std::vector<double> target_values;
  int steps = 4;
  double alpha0 = 1e-3;
  double alpha_decay = 1e-2;
  std::optional<double> expect_growth;

  // spectrum
  int eig_count = 1;

  // fraclimit
  std::vector<double> s_list;
  std::optional<double> decay_factor;

  /// Hash of the canonicalized configuration document.
  std::string config_hash;

  Grid build_grid_from_config() const;
  RegionSet build_regions_from_config(const Grid& g) const;
};

/// Parse a strict-JSON configuration document.  Throws ConfigError on any
/// schema violation (unknown field, wrong type, domain error).
ExperimentConfig parse_config_text(const std::string& json_text);

/// Parse a configuration file (same contract).
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace loglap
