#include "llab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace llab {

namespace {

using nlohmann::json;

json field_to_json(const ScalarField& field) {
  json j;
  j["dim"] = field.grid.dim();
  j["units"] = field.grid.units();
  j["points_per_unit"] = field.grid.points_per_unit();
  std::vector<Real> values(field.values.data(),
                           field.values.data() + field.values.size());
  j["values"] = values;
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void save_field_json(const ScalarField& field, const std::filesystem::path& path) {
  write_text(path, field_to_json(field).dump() + "\n");
}

namespace {

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  json j;
  in >> j;
  return j;
}

}  // namespace

ScalarField load_field_json(const std::filesystem::path& path) {
  const json j = load_json_file(path);
  const int dim = j.at("dim").get<int>();
  const std::vector<int> units = j.at("units").get<std::vector<int>>();
  const int ppu = j.at("points_per_unit").get<int>();
  Grid grid = make_grid(dim, units, ppu);
  const std::vector<Real> values = j.at("values").get<std::vector<Real>>();
  if (Index(values.size()) != grid.num_points()) {
    throw std::runtime_error("field file: values length does not match grid: " +
                             path.string());
  }
  ArrayXr arr(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::runtime_error("field file: non-finite value: " + path.string());
    }
    arr[Index(i)] = values[i];
  }
  return ScalarField(std::move(grid), std::move(arr));
}

void save_field_pgm(const ScalarField& field, const std::filesystem::path& path) {
  if (field.grid.dim() != 2) {
    throw std::invalid_argument("save_field_pgm: only 2D fields");
  }
  const Real lo = field.values.minCoeff();
  const Real hi = field.values.maxCoeff();
  const Index height = field.grid.extent(0);
  const Index width = field.grid.extent(1);
  std::string out;
  char head[160];
  std::snprintf(head, sizeof(head), "P5\n# min=%.17g max=%.17g\n%lld %lld\n65535\n",
                double(lo), double(hi), (long long)width, (long long)height);
  out += head;
  const Real span = hi - lo;
  out.reserve(out.size() + std::size_t(2 * width * height));
  for (Index j = 0; j < field.values.size(); ++j) {
    unsigned sample = 0;
    if (span > 0) {
      sample = unsigned(std::lround((field.values[j] - lo) / span * Real(65535)));
    }
    out.push_back(char((sample >> 8) & 0xff));
    out.push_back(char(sample & 0xff));
  }
  write_text(path, out);
}

void save_potential_json(const Potential& p, const std::filesystem::path& path) {
  json j;
  j["dim"] = p.dim;
  j["units"] = p.units;
  std::vector<Real> values(p.cell_values.data(),
                           p.cell_values.data() + p.cell_values.size());
  j["cell_values"] = values;
  j["meta"] = {{"generator", p.meta.generator},
               {"params", p.meta.params},
               {"seed", p.meta.seed}};
  write_text(path, j.dump() + "\n");
}

Potential load_potential_json(const std::filesystem::path& path) {
  const json j = load_json_file(path);
  Potential p;
  p.dim = j.at("dim").get<int>();
  p.units = j.at("units").get<std::vector<int>>();
  const std::vector<Real> values = j.at("cell_values").get<std::vector<Real>>();
  p.cell_values = Eigen::Map<const ArrayXr>(values.data(), Index(values.size()));
  const json& meta = j.at("meta");
  p.meta.generator = meta.at("generator").get<std::string>();
  p.meta.params = meta.at("params").get<std::map<std::string, Real>>();
  p.meta.seed = meta.at("seed").get<std::uint64_t>();
  validate_potential(p);
  return p;
}

std::string format_real(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", double(v));
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : columns_(header.size()), path_(path) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += header[i];
  }
  buffer_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw std::invalid_argument("CsvWriter: column count mismatch");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += cells[i];
  }
  buffer_ += '\n';
}

void CsvWriter::close() {
  if (!path_.empty()) {
    write_text(path_, buffer_);
    path_.clear();
  }
}

CsvWriter::~CsvWriter() {
  try {
    close();
  } catch (...) {
    // destructors must not throw; call close() directly to observe failures
  }
}

}  // namespace llab
