#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "llab/grid.hpp"
#include "llab/potential.hpp"
#include "llab/types.hpp"

namespace llab {

/// ScalarField JSON: {"dim", "units", "points_per_unit", "values"} with the
/// values flat row-major. Rejects non-finite values on load.
void save_field_json(const ScalarField& field, const std::filesystem::path& path);
ScalarField load_field_json(const std::filesystem::path& path);

/// 2D fields as binary PGM (P5, 16-bit, big-endian samples), [min,max]
/// rescaled to [0,65535]; the rescale bounds go in the comment line.
/// Rows follow axis 0.
void save_field_pgm(const ScalarField& field, const std::filesystem::path& path);

/// Potential JSON: {"dim","units","cell_values","meta":{"generator","params","seed"}}.
void save_potential_json(const Potential& p, const std::filesystem::path& path);
Potential load_potential_json(const std::filesystem::path& path);

/// Decimal formatting used by every CSV column: 12 significant digits.
std::string format_real(Real v);

/// One-header CSV writer; every row must match the header's column count.
/// The file is written atomically on close() (or destruction).
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  ~CsvWriter();
  void row(const std::vector<std::string>& cells);
  void close();

 private:
  std::size_t columns_;
  std::string buffer_;
  std::filesystem::path path_;
};

}  // namespace llab
