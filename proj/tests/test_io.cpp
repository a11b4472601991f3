#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include "llab/io.hpp"
#include "llab/potential.hpp"

using namespace llab;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "llab_io_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("scalar field JSON round trip") {
  const fs::path dir = temp_dir();
  const Grid g = make_grid(2, {3, 2}, 2);
  ArrayXr v(g.num_points());
  for (Index i = 0; i < v.size(); ++i) v[i] = 0.1 * Real(i) - 0.7;
  const ScalarField f(g, v);
  save_field_json(f, dir / "f.json");
  const ScalarField back = load_field_json(dir / "f.json");
  CHECK(back.grid == g);
  CHECK((back.values == f.values).all());

  // Two saves are byte-identical.
  save_field_json(f, dir / "f2.json");
  CHECK(slurp(dir / "f.json") == slurp(dir / "f2.json"));
}

TEST_CASE("field JSON loader rejects bad files") {
  const fs::path dir = temp_dir();
  {
    std::ofstream out(dir / "bad_len.json");
    out << R"({"dim":1,"units":[2],"points_per_unit":2,"values":[1,2,3]})";
  }
  CHECK_THROWS(load_field_json(dir / "bad_len.json"));
  {
    std::ofstream out(dir / "bad_nan.json");
    out << R"({"dim":1,"units":[1],"points_per_unit":2,"values":[1,null]})";
  }
  CHECK_THROWS(load_field_json(dir / "bad_nan.json"));
  CHECK_THROWS(load_field_json(dir / "missing.json"));
}

TEST_CASE("PGM: 16-bit big-endian with rescale bounds in the comment") {
  const fs::path dir = temp_dir();
  const Grid g = make_grid(2, {1, 1}, 2);
  ArrayXr v(4);
  v << 0.0, 1.0, 2.0, 4.0;
  save_field_pgm(ScalarField(g, v), dir / "f.pgm");
  const std::string data = slurp(dir / "f.pgm");
  const std::string header = "P5\n# min=0 max=4\n2 2\n65535\n";
  REQUIRE(data.size() == header.size() + 8);
  CHECK(data.substr(0, header.size()) == header);
  const unsigned char* s = reinterpret_cast<const unsigned char*>(data.data()) +
                           header.size();
  auto sample = [&](int i) { return unsigned(s[2 * i]) << 8 | unsigned(s[2 * i + 1]); };
  CHECK(sample(0) == 0);
  CHECK(sample(1) == 16384);  // 1/4 of 65535, rounded
  CHECK(sample(2) == 32768);
  CHECK(sample(3) == 65535);

  CHECK_THROWS(save_field_pgm(
      ScalarField::constant(make_grid(1, {4}, 2), 1.0), dir / "one_d.pgm"));
}

TEST_CASE("constant 2D field maps to all-zero PGM samples") {
  const fs::path dir = temp_dir();
  const Grid g = make_grid(2, {1, 1}, 2);
  save_field_pgm(ScalarField::constant(g, 3.0), dir / "const.pgm");
  const std::string data = slurp(dir / "const.pgm");
  const std::string tail = data.substr(data.size() - 8);
  for (char c : tail) CHECK(c == 0);
}

TEST_CASE("potential JSON round trip preserves meta and 64-bit seeds") {
  const fs::path dir = temp_dir();
  Potential p = gen_uniform({4, 4}, 0.0, 2.0, (1ull << 63) + 5);
  save_potential_json(p, dir / "p.json");
  const Potential back = load_potential_json(dir / "p.json");
  CHECK(back.dim == p.dim);
  CHECK(back.units == p.units);
  CHECK((back.cell_values == p.cell_values).all());
  CHECK(back.meta.generator == "uniform");
  CHECK(back.meta.seed == (1ull << 63) + 5);
  CHECK(back.meta.params.at("hi") == 2.0);
}

TEST_CASE("potential loader enforces invariants") {
  const fs::path dir = temp_dir();
  {
    std::ofstream out(dir / "neg.json");
    out << R"({"dim":1,"units":[2],"cell_values":[-1,2],)"
        << R"("meta":{"generator":"manual","params":{},"seed":0}})";
  }
  CHECK_THROWS(load_potential_json(dir / "neg.json"));
  {
    std::ofstream out(dir / "zero.json");
    out << R"({"dim":1,"units":[2],"cell_values":[0,0],)"
        << R"("meta":{"generator":"manual","params":{},"seed":0}})";
  }
  CHECK_THROWS(load_potential_json(dir / "zero.json"));
}

TEST_CASE("format_real gives 12 significant digits") {
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(2.0) == "2");
  CHECK(format_real(123456789012345.0) == "1.23456789012e+14");
  CHECK(format_real(-0.5) == "-0.5");
}

TEST_CASE("CsvWriter enforces column counts and writes on close") {
  const fs::path dir = temp_dir();
  const fs::path path = dir / "t.csv";
  CsvWriter csv(path, {"a", "b"});
  csv.row({"1", "2"});
  CHECK_THROWS(csv.row({"only-one"}));
  csv.row({format_real(0.25), "x"});
  csv.close();
  CHECK(slurp(path) == "a,b\n1,2\n0.25,x\n");
}
