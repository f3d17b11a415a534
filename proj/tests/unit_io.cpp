#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "halfline/boundary.hpp"
#include "halfline/calderon.hpp"
#include "halfline/evolution.hpp"
#include "halfline/indices.hpp"
#include "halfline/io.hpp"
#include "halfline/rng.hpp"
#include "halfline/spectral.hpp"
#include "halfline/subspace.hpp"

using namespace halfline;
using nlohmann::json;

namespace {

Matrix gamma2() {
  Matrix g = Matrix::Zero(2, 2);
  g(0, 1) = -1.0;
  g(1, 0) = 1.0;
  return g;
}

Matrix gamma4() {
  Matrix g = Matrix::Zero(4, 4);
  g.topRightCorner(2, 2) = -Matrix::Identity(2, 2);
  g.bottomLeftCorner(2, 2) = Matrix::Identity(2, 2);
  return g;
}

DiracData system4(double a, double b, double c, double e) {
  Eigen::Vector4d v;
  v << a, b, c, e;
  DiracData d;
  d.dim = 4;
  d.a0 = v.cast<Complex>().asDiagonal();
  d.gamma = gamma4();
  auto val = validate_dirac_data(d.a0, d.gamma, d.alpha);
  REQUIRE(val.data.has_value());
  return *val.data;
}

Subspace unit_span(int n, std::initializer_list<int> idxs) {
  Matrix m = Matrix::Zero(n, static_cast<int>(idxs.size()));
  int c = 0;
  for (int i : idxs) m(i, c++) = 1.0;
  return span(m);
}

json mat_json(const Matrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
  return out;
}

template <class F>
std::string config_pointer(F&& f) {
  try {
    f();
  } catch (const config_error& e) {
    return e.pointer;
  }
  return "<no error>";
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("dirac data roundtrips exactly") {
  DiracData d = random_system(4, 2, 5);
  REQUIRE(d.alpha.has_value());
  json j = to_json(d);
  DiracData d2 = dirac_from_json(j);
  CHECK(d2.dim == 4);
  CHECK((d2.a0 - d.a0).norm() == 0.0);
  CHECK((d2.gamma - d.gamma).norm() == 0.0);
  REQUIRE(d2.alpha.has_value());
  CHECK((*d2.alpha - *d.alpha).norm() == 0.0);
  CHECK(d2.tol == d.tol);

  DiracData plain = system4(1.0, 2.0, -1.0, -2.0);
  json jp = to_json(plain);
  CHECK_FALSE(jp.contains("alpha"));
  CHECK_FALSE(dirac_from_json(jp).alpha.has_value());
}

TEST_CASE("dirac parsing reports json pointers") {
  DiracData d = system4(1.0, 2.0, -1.0, -2.0);
  json good = to_json(d);

  json j = good;
  j.erase("dim");
  CHECK(config_pointer([&] { (void)dirac_from_json(j); }) == "/dim");

  j = good;
  j["dim"] = 0;
  CHECK(config_pointer([&] { (void)dirac_from_json(j); }) == "/dim");

  j = good;
  j["a0"] = json::array({json::array({1.0, 0.0})});
  CHECK(config_pointer([&] { (void)dirac_from_json(j); }) == "/a0");

  j = good;
  j["gamma"][3] = json::array({1.0});
  CHECK(config_pointer([&] { (void)dirac_from_json(j); }) == "/gamma/3");

  j = good;
  j["tol"] = "tight";
  CHECK(config_pointer([&] { (void)dirac_from_json(j); }) == "/tol");

  try {
    json bad = good;
    bad.erase("dim");
    (void)dirac_from_json(bad);
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("missing field") != std::string::npos);
    CHECK(std::string(e.what()).find("/dim") != std::string::npos);
  }
}

TEST_CASE("subspaces and conditions roundtrip") {
  Subspace s = span(Rng(13).complex_gaussian_matrix(6, 2));
  Subspace s2 = subspace_from_json(to_json(s));
  CHECK(s2.ambient_dim == 6);
  CHECK((s2.frame - s.frame).norm() == 0.0);

  DiracData d = system4(1.0, 2.0, -1.0, -2.0);
  BoundaryCondition b = aps_condition(d, 0.0, true);
  json j = to_json(b);
  CHECK(j["label"] == "APS(0]");
  BoundaryCondition b2 = condition_from_json(j);
  CHECK(b2.label == "APS(0]");
  CHECK(same_space(b.space, b2.space));

  json empty = to_json(Subspace{4, Matrix::Zero(4, 0)});
  Subspace z = subspace_from_json(empty);
  CHECK(z.ambient_dim == 4);
  CHECK(z.dim() == 0);

  json bad = to_json(s);
  bad["ambient_dim"] = -1;
  CHECK(config_pointer([&] { (void)subspace_from_json(bad); }) == "/ambient_dim");

  bad = to_json(s);
  bad["frame"].push_back(json::array({0.0, 0.0}));
  CHECK(config_pointer([&] { (void)subspace_from_json(bad); }) == "/frame");
}

TEST_CASE("elliptic data travels over canonical frames") {
  DiracData d = system4(1.0, 2.0, -1.0, -2.0);
  EllipticData data;
  data.lambda = 0.0;
  data.f = unit_span(4, {2});
  data.v = unit_span(4, {3});
  data.u = unit_span(4, {3});
  data.e = unit_span(4, {2});
  data.g = Matrix::Constant(1, 1, 0.7);

  json j = elliptic_to_json(d, data);
  CHECK(j.contains("lambda"));
  CHECK(j.contains("F"));
  CHECK(j.contains("E"));
  CHECK(j.contains("g"));

  EllipticData back = elliptic_from_json(d, j);
  CHECK(back.lambda == 0.0);
  CHECK(back.f.dim() == 1);
  CHECK(back.e.dim() == 1);
  CHECK(std::abs(std::abs(back.g(0, 0)) - 0.7) < 1e-12);
  CHECK(same_space(from_elliptic_data(d, data).space,
                   from_elliptic_data(d, back).space));
}

TEST_CASE("recovered elliptic data for random conditions roundtrips") {
  DiracData d = random_system(6, 2, 9);
  Rng rng(11);
  for (int draw = 0; draw < 5; ++draw) {
    Subspace b = span(rng.complex_gaussian_matrix(6, 3));
    EllipticData data = elliptic_data_of(d, raw_condition(b), 0.0);
    EllipticData back = elliptic_from_json(d, elliptic_to_json(d, data));
    CHECK(same_space(from_elliptic_data(d, back).space, b));
  }
}

TEST_CASE("grid sections roundtrip exactly and validate shape") {
  GridSection s = uniform_grid_section(2, 0.0, 1.0, 5);
  s.values = Rng(17).complex_gaussian_matrix(2, 5);
  GridSection s2 = section_from_json(to_json(s));
  CHECK(s2.grid == s.grid);
  CHECK((s2.values - s.values).norm() == 0.0);

  json j = to_json(s);
  j["grid"].push_back(2.0);
  CHECK(config_pointer([&] { (void)section_from_json(j); }) == "/values");

  j = to_json(s);
  j["grid"] = json::array();
  j["values"] = json::array();
  CHECK(config_pointer([&] { (void)section_from_json(j); }) == "/grid");

  j = to_json(s);
  j["values"][1] = json::array({json::array({0.0, 0.0})});
  CHECK(config_pointer([&] { (void)section_from_json(j); }) == "/values/1");

  j = to_json(s);
  j["values"][0][0] = json::array({1.0});
  CHECK(config_pointer([&] { (void)section_from_json(j); }) == "/values/0/0");
}

TEST_CASE("analysis reports serialize with their diagnostics") {
  DiracData d = system4(1.0, 0.0, -1.0, 0.0);
  CalderonPair cp = constant_calderon(d);
  json j = to_json(cp);
  CHECK(j["c_ext"]["ambient_dim"] == 4);
  CHECK(j["diagnostics"]["tail_kernel_dim"] == 2);
  CHECK(j["diagnostics"]["duality_residual"].get<double>() == cp.duality_residual);
  CHECK(j["diagnostics"]["cross_check"].get<double>() == cp.cross_check);

  IndexReport rep = ext_index(d, aps_condition(d, 0.0, true), cp);
  json jr = to_json(rep);
  CHECK(jr["index"] == 2);
  CHECK(jr["kernel_dim"] == 2);
  CHECK(jr["cokernel_dim"] == 0);
  CHECK(jr["method"] == "cauchy data intersection");
  CHECK(jr["residuals"].is_object());
  CHECK(jr["residuals"].size() == 3);

  VerifySummary sum;
  sum.theorem = "probe";
  sum.draws = 3;
  sum.failures = 1;
  sum.max_residual = 0.5;
  sum.notes = {"first", "second"};
  json js = to_json(sum);
  CHECK(js["theorem"] == "probe");
  CHECK(js["draws"] == 3);
  CHECK(js["failures"] == 1);
  CHECK(js["max_residual"].get<double>() == 0.5);
  CHECK(js["notes"].size() == 2);
}

TEST_CASE("deterministic dump sorts keys and fixes float format") {
  json j;
  j["beta"] = 0.1;
  j["alpha"] = json::array({true, nullptr, "x"});
  j["nested"]["count"] = 2;
  j["empty_list"] = json::array();
  j["empty_obj"] = json::object();

  std::string expected =
      "{\n"
      "  \"alpha\": [\n"
      "    true,\n"
      "    null,\n"
      "    \"x\"\n"
      "  ],\n"
      "  \"beta\": 0.10000000000000001,\n"
      "  \"empty_list\": [],\n"
      "  \"empty_obj\": {},\n"
      "  \"nested\": {\n"
      "    \"count\": 2\n"
      "  }\n"
      "}\n";
  CHECK(dump_deterministic(j) == expected);
  CHECK(dump_deterministic(j) == dump_deterministic(j));

  json j2;
  j2["nested"]["count"] = 2;
  j2["empty_obj"] = json::object();
  j2["empty_list"] = json::array();
  j2["alpha"] = json::array({true, nullptr, "x"});
  j2["beta"] = 0.1;
  CHECK(dump_deterministic(j2) == expected);

  CHECK(dump_deterministic(json(1.5)) == "1.5\n");
}

TEST_CASE("scan rows print under the fixed header") {
  ScanRow r1;
  r1.lambda = 2.0;
  r1.s = 0.0;
  r1.norm_mid = 0.5;
  r1.norm_far = 0.25;
  ScanRow r2;
  r2.lambda = 4.0;
  r2.s = 0.5;
  r2.norm_mid = 1.0 / 3.0;
  r2.norm_far = 0.25;

  std::string expected =
      "lambda,norm_mid,norm_far,s\n"
      "2,0.5,0.25,0\n"
      "4,0.33333333333333331,0.25,0.5\n";
  CHECK(scan_csv({r1, r2}) == expected);
  CHECK(scan_csv({}) == "lambda,norm_mid,norm_far,s\n");
}

TEST_CASE("path configs build every family") {
  DiracData d4 = system4(1.0, 2.0, -1.0, -2.0);

  json constant;
  constant["family"] = "constant";
  constant["system"] = to_json(d4);
  constant["r"] = 2.0;
  CoefficientPath pc = path_from_config(constant);
  CHECK(pc.name == "constant");
  CHECK(pc.r == 2.0);
  CHECK((pc.a(0.7) - d4.a0).norm() == 0.0);
  CHECK(validate_path(pc).ok());

  json cylinder;
  cylinder["family"] = "cylinder";
  cylinder["K"] = 2;
  cylinder["coupling"] = 0.5;
  cylinder["r"] = 1.0;
  CoefficientPath pcy = path_from_config(cylinder);
  CHECK(pcy.d.dim == 4);
  CHECK(std::abs(pcy.v(0.5)(0, 1) - Complex(0.5)) < 1e-12);

  json even;
  even["family"] = "hyperbolic-even";
  even["K"] = 2;
  CoefficientPath pe = path_from_config(even);
  CHECK(pe.d.dim == 8);
  CHECK(pe.r == doctest::Approx(std::log(2.0) + 1.0));

  json odd;
  odd["family"] = "hyperbolic-odd";
  odd["K"] = 1;
  odd["horizon"] = 7.0;
  CoefficientPath po = path_from_config(odd);
  CHECK(po.d.dim == 2);
  CHECK(po.r == 7.0);

  json coupled;
  coupled["family"] = "random-coupled";
  coupled["dim"] = 4;
  coupled["kernel_dim"] = 2;
  coupled["seed"] = 3;
  coupled["coupling"] = 0.4;
  CoefficientPath pr = path_from_config(coupled);
  CHECK(pr.d.dim == 4);
  CHECK(pr.r == 1.0);
  CHECK(validate_path(pr).ok());
}

TEST_CASE("table configs interpolate piecewise linearly") {
  DiracData d;
  d.dim = 2;
  Eigen::Vector2d diag;
  diag << 1.0, -1.0;
  d.a0 = diag.cast<Complex>().asDiagonal();
  d.gamma = gamma2();
  d = *validate_dirac_data(d.a0, d.gamma, d.alpha).data;

  Matrix hop = Matrix::Zero(2, 2);
  hop(0, 1) = 1.0;
  hop(1, 0) = 1.0;

  json cfg;
  cfg["family"] = "table";
  cfg["system"] = to_json(d);
  cfg["r"] = 2.0;
  cfg["times"] = json::array({0.0, 1.0, 2.0});
  cfg["a"] = json::array({mat_json(d.a0), mat_json(2.0 * d.a0), mat_json(2.0 * d.a0)});
  cfg["v"] = json::array(
      {mat_json(Matrix::Zero(2, 2)), mat_json(hop), mat_json(Matrix::Zero(2, 2))});

  CoefficientPath p = path_from_config(cfg);
  CHECK(p.name == "table");
  CHECK((p.a(0.5) - 1.5 * d.a0).norm() < 1e-14);
  CHECK((p.a(1.5) - 2.0 * d.a0).norm() < 1e-14);
  CHECK((p.a(2.5) - 2.0 * d.a0).norm() == 0.0);
  CHECK((p.v(0.5) - 0.5 * hop).norm() < 1e-14);
  CHECK(p.lipschitz_bound >= d.a0.norm());
  CHECK(validate_path(p).ok());
}

TEST_CASE("path configs reject malformed input with pointers") {
  CHECK(config_pointer([] { (void)path_from_config(json::array()); }) == "");
  CHECK(config_pointer([] { (void)path_from_config(json::object()); }) == "/family");

  json j;
  j["family"] = 7;
  CHECK(config_pointer([&] { (void)path_from_config(j); }) == "/family");

  j["family"] = "spiral";
  try {
    (void)path_from_config(j);
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(e.pointer == "/family");
    CHECK(std::string(e.what()).find("unknown family spiral") != std::string::npos);
  }

  json cyl;
  cyl["family"] = "cylinder";
  cyl["K"] = 2;
  cyl["r"] = 1.0;
  CHECK(config_pointer([&] { (void)path_from_config(cyl); }) == "/coupling");

  DiracData d = system4(1.0, 2.0, -1.0, -2.0);
  json tab;
  tab["family"] = "table";
  tab["system"] = to_json(d);
  tab["r"] = 1.0;
  tab["times"] = json::array({0.0});
  CHECK(config_pointer([&] { (void)path_from_config(tab); }) == "/times");

  tab["times"] = json::array({0.0, 0.5, 0.25});
  CHECK(config_pointer([&] { (void)path_from_config(tab); }) == "/times/2");

  tab["times"] = json::array({0.0, 1.0});
  tab["a"] = json::array({mat_json(d.a0)});
  CHECK(config_pointer([&] { (void)path_from_config(tab); }) == "/a");
}

TEST_CASE("text files write and parse back") {
  json j;
  j["value"] = 0.25;
  j["list"] = json::array({1, 2, 3});
  std::string path = "/tmp/halfline_io_roundtrip.json";
  write_text_file(path, dump_deterministic(j));
  json back = read_json_file(path);
  CHECK(back == j);

  CHECK_THROWS_AS((void)read_json_file("/tmp/halfline_missing_file.json"),
                  std::runtime_error);
}

}  // TEST_SUITE
