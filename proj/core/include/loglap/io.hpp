#ifndef LOGLAP_IO_HPP
#define LOGLAP_IO_HPP

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace loglap {

/// FNV-1a 64-bit hash; used for grid/config/potential tags.
std::uint64_t fnv1a64(std::string_view data);

/// Lower-case hex rendering of a 64-bit hash.
std::string hex64(std::uint64_t v);

/// Shortest round-trip decimal rendering of a double ("%.17g" fallback);
/// used everywhere a float is persisted so that reruns are byte-identical.
std::string format_double(double v);

/// Write a dense matrix as CSV, row-major, with a header row listing the
/// column indices 0..cols-1.  A nonempty comment is emitted first as a
/// '#'-prefixed line (used to stamp outputs with the producing config hash).
void write_matrix_csv(const std::filesystem::path& file,
                      const Eigen::MatrixXd& m, std::string_view comment = {});

/// Read a matrix written by write_matrix_csv; '#' lines are skipped.
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& file);

/// Write a whole text file (parent directories must exist).
void write_text_file(const std::filesystem::path& file, std::string_view text);

/// Read a whole text file.
std::string read_text_file(const std::filesystem::path& file);

}  // namespace loglap

#endif
