#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "loglap/forms.hpp"
#include "loglap/grid.hpp"
#include "loglap/solver.hpp"

namespace loglap {

/// Galerkin matrix of the exterior measurement operator: entry (i, j) is the
/// pairing of the operator applied to the j-th data window cell against the
/// i-th measurement window cell.  Rows are indexed by the cells of the
/// measurement window W2, columns by the data window W1.
struct DNMatrix {
  Eigen::MatrixXd matrix;
  std::vector<int> rows_w2;
  std::vector<int> cols_w1;
  std::string q_tag;
  std::string grid_hash;

  /// Max relative asymmetry; requires rows_w2 == cols_w1.
  double symmetry_defect() const;
};

/// Assembles the measurement operator as the Schur complement
/// S = A_EE - A_EI A_II^{-1} A_IE of A = K + Q over all exterior cells,
/// restricted to rows in W2 and columns in W1.  Throws when the interior
/// block is not positive definite (same condition as the forward solver).
DNMatrix assemble_dn_map(const Grid& g, const RegionSet& r,
                         const SymmetricForm& K, const SymmetricForm& Q,
                         const std::string& q_tag = "");

/// Pairing <Lambda f, g> for data coefficients f on the W1 cells (ordered as
/// cols_w1) and measurement coefficients g on the W2 cells (ordered as
/// rows_w2).
double dn_pairing(const DNMatrix& dn, const Eigen::VectorXd& f_w1,
                  const Eigen::VectorXd& g_w2);

struct IdentityReport {
  double lhs = 0.0;       ///< difference pairing evaluated through the matrices
  double rhs = 0.0;       ///< weighted interior product of the two solutions
  double residual = 0.0;  ///< |lhs - rhs|
};

/// Exact algebraic identity linking the difference of two measurement
/// operators to an interior integral of the potential difference:
///   <(Lambda_{q1} - Lambda_{q2}) f1, f2> = sum_{interior} (q1 - q2) u1 u2 h^n
/// where u1 solves the q1-problem with data f1 and u2 the q2-problem with f2.
/// f1 must be supported in W1 and f2 in W2.
IdentityReport integral_identity_residual(const Grid& g, const RegionSet& r,
                                          const SymmetricForm& K,
                                          const CellField& q1,
                                          const CellField& q2,
                                          const CellField& f1,
                                          const CellField& f2);

/// Thread-safe cache of assembled measurement operators keyed by
/// (grid_hash, q_tag).  Entries are immutable once inserted.
class DNCache {
 public:
  std::shared_ptr<const DNMatrix> find(const std::string& grid_hash,
                                       const std::string& q_tag) const;
  /// Inserts and returns the cached entry (first writer wins).
  std::shared_ptr<const DNMatrix> insert(std::shared_ptr<const DNMatrix> dn);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, std::string>, std::shared_ptr<const DNMatrix>>
      entries_;
};

}  // namespace loglap
