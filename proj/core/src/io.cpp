#include "halfline/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace halfline {

namespace {

using nlohmann::json;

json complex_pair(const Complex& z) { return json::array({z.real(), z.imag()}); }

json matrix_rowmajor(const Matrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.push_back(complex_pair(m(i, j)));
  return out;
}

json frame_colmajor(const Matrix& m) {
  json out = json::array();
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) out.push_back(complex_pair(m(i, j)));
  return out;
}

const json& require(const json& j, const char* key, const std::string& ptr) {
  if (!j.is_object() || !j.contains(key))
    throw config_error(ptr + "/" + key, "missing field");
  return j.at(key);
}

double require_number(const json& j, const char* key, const std::string& ptr) {
  const json& v = require(j, key, ptr);
  if (!v.is_number()) throw config_error(ptr + "/" + key, "expected a number");
  return v.get<double>();
}

int require_int(const json& j, const char* key, const std::string& ptr) {
  const json& v = require(j, key, ptr);
  if (!v.is_number_integer()) throw config_error(ptr + "/" + key, "expected an integer");
  return v.get<int>();
}

Complex read_pair(const json& v, const std::string& ptr) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw config_error(ptr, "expected a [re, im] pair");
  return Complex(v[0].get<double>(), v[1].get<double>());
}

Matrix matrix_rowmajor_from(const json& v, int rows, int cols, const std::string& ptr) {
  if (!v.is_array() || static_cast<int>(v.size()) != rows * cols)
    throw config_error(ptr, "expected " + std::to_string(rows * cols) + " entries");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = read_pair(v[i * cols + j], ptr + "/" + std::to_string(i * cols + j));
  return m;
}

Matrix frame_colmajor_from(const json& v, int rows, const std::string& ptr) {
  if (!v.is_array() || (rows > 0 && v.size() % rows != 0))
    throw config_error(ptr, "entry count must be a multiple of ambient_dim");
  int cols = rows > 0 ? static_cast<int>(v.size()) / rows : 0;
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i)
      m(i, j) = read_pair(v[j * rows + i], ptr + "/" + std::to_string(j * rows + i));
  return m;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void dump_rec(const json& j, int indent, int depth, std::string* out) {
  std::string pad(static_cast<size_t>(indent) * depth, ' ');
  std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::null:
      *out += "null";
      break;
    case json::value_t::boolean:
      *out += j.get<bool>() ? "true" : "false";
      break;
    case json::value_t::number_integer:
      *out += std::to_string(j.get<long long>());
      break;
    case json::value_t::number_unsigned:
      *out += std::to_string(j.get<unsigned long long>());
      break;
    case json::value_t::number_float:
      *out += format_double(j.get<double>());
      break;
    case json::value_t::string:
      *out += json(j.get<std::string>()).dump();
      break;
    case json::value_t::array: {
      if (j.empty()) {
        *out += "[]";
        break;
      }
      *out += "[";
      bool first = true;
      for (const auto& el : j) {
        *out += first ? "\n" : ",\n";
        *out += pad_in;
        dump_rec(el, indent, depth + 1, out);
        first = false;
      }
      *out += "\n" + pad + "]";
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        *out += "{}";
        break;
      }
      *out += "{";
      bool first = true;
      for (auto it = j.cbegin(); it != j.cend(); ++it) {
        *out += first ? "\n" : ",\n";
        *out += pad_in + json(it.key()).dump() + ": ";
        dump_rec(it.value(), indent, depth + 1, out);
        first = false;
      }
      *out += "\n" + pad + "}";
      break;
    }
    default:
      throw std::runtime_error("dump_deterministic: unsupported value type");
  }
}

}  // namespace

nlohmann::json to_json(const DiracData& d) {
  json out;
  out["dim"] = d.dim;
  out["a0"] = matrix_rowmajor(d.a0);
  out["gamma"] = matrix_rowmajor(d.gamma);
  if (d.alpha) out["alpha"] = matrix_rowmajor(*d.alpha);
  out["tol"] = d.tol;
  return out;
}

DiracData dirac_from_json(const nlohmann::json& j) {
  DiracData d;
  d.dim = require_int(j, "dim", "");
  if (d.dim <= 0) throw config_error("/dim", "dimension must be positive");
  d.a0 = matrix_rowmajor_from(require(j, "a0", ""), d.dim, d.dim, "/a0");
  d.gamma = matrix_rowmajor_from(require(j, "gamma", ""), d.dim, d.dim, "/gamma");
  if (j.contains("alpha"))
    d.alpha = matrix_rowmajor_from(j.at("alpha"), d.dim, d.dim, "/alpha");
  if (j.contains("tol")) d.tol = require_number(j, "tol", "");
  return d;
}

nlohmann::json to_json(const Subspace& s) {
  json out;
  out["ambient_dim"] = s.ambient_dim;
  out["frame"] = frame_colmajor(s.frame);
  return out;
}

Subspace subspace_from_json(const nlohmann::json& j) {
  Subspace s;
  s.ambient_dim = require_int(j, "ambient_dim", "");
  if (s.ambient_dim < 0) throw config_error("/ambient_dim", "must be nonnegative");
  s.frame = frame_colmajor_from(require(j, "frame", ""), s.ambient_dim, "/frame");
  return s;
}

nlohmann::json to_json(const BoundaryCondition& b) {
  json out = to_json(b.space);
  out["label"] = b.label;
  return out;
}

BoundaryCondition condition_from_json(const nlohmann::json& j) {
  Subspace s = subspace_from_json(j);
  std::string label = j.contains("label") ? j.at("label").get<std::string>() : "raw";
  return raw_condition(s, label);
}

nlohmann::json elliptic_to_json(const DiracData& d, const EllipticData& data) {
  SpectralDecomposition dec = eigendecompose(d);
  Subspace lower = spectral_projection(dec, Interval::at_most(data.lambda)).first;
  Subspace far_neg = spectral_projection(dec, Interval::less(-data.lambda)).first;
  Subspace u_canon = intersect(orthogonal_complement(data.e), lower);
  Subspace v_canon = intersect(orthogonal_complement(data.f), far_neg);
  // re-express the graph map over the canonical complements
  Matrix g_canon = (v_canon.frame.adjoint() * data.v.frame) * data.g *
                   (data.u.frame.adjoint() * u_canon.frame);
  json out;
  out["lambda"] = data.lambda;
  out["F"] = to_json(data.f);
  out["E"] = to_json(data.e);
  out["g"] = matrix_rowmajor(g_canon);
  return out;
}

EllipticData elliptic_from_json(const DiracData& d, const nlohmann::json& j) {
  EllipticData data;
  data.lambda = require_number(j, "lambda", "");
  data.f = subspace_from_json(require(j, "F", ""));
  data.e = subspace_from_json(require(j, "E", ""));
  SpectralDecomposition dec = eigendecompose(d);
  Subspace lower = spectral_projection(dec, Interval::at_most(data.lambda)).first;
  Subspace far_neg = spectral_projection(dec, Interval::less(-data.lambda)).first;
  data.u = intersect(orthogonal_complement(data.e), lower);
  data.v = intersect(orthogonal_complement(data.f), far_neg);
  data.g = matrix_rowmajor_from(require(j, "g", ""), data.v.dim(), data.u.dim(), "/g");
  return data;
}

nlohmann::json to_json(const GridSection& s) {
  json grid = json::array();
  for (double t : s.grid) grid.push_back(t);
  json values = json::array();
  for (int i = 0; i < s.samples(); ++i) {
    json col = json::array();
    for (int r = 0; r < s.dim(); ++r) col.push_back(complex_pair(s.values(r, i)));
    values.push_back(col);
  }
  json out;
  out["grid"] = grid;
  out["values"] = values;
  return out;
}

GridSection section_from_json(const nlohmann::json& j) {
  const json& grid = require(j, "grid", "");
  const json& values = require(j, "values", "");
  if (!grid.is_array() || !values.is_array() || grid.size() != values.size())
    throw config_error("/values", "grid and values must be arrays of equal length");
  GridSection s;
  int samples = static_cast<int>(grid.size());
  if (samples == 0) throw config_error("/grid", "at least one sample required");
  int dim = static_cast<int>(values[0].size());
  s.grid.resize(samples);
  s.values.resize(dim, samples);
  for (int i = 0; i < samples; ++i) {
    if (!grid[i].is_number())
      throw config_error("/grid/" + std::to_string(i), "expected a number");
    s.grid[i] = grid[i].get<double>();
    if (static_cast<int>(values[i].size()) != dim)
      throw config_error("/values/" + std::to_string(i), "ragged sample");
    for (int r = 0; r < dim; ++r)
      s.values(r, i) = read_pair(values[i][r], "/values/" + std::to_string(i) + "/" +
                                                   std::to_string(r));
  }
  return s;
}

nlohmann::json to_json(const CalderonPair& cp) {
  json out;
  out["c_max"] = to_json(cp.c_max);
  out["c_ext"] = to_json(cp.c_ext);
  out["p_max"] = matrix_rowmajor(cp.p_max);
  out["p_ext"] = matrix_rowmajor(cp.p_ext);
  json diag;
  diag["duality_residual"] = cp.duality_residual;
  diag["cross_check"] = cp.cross_check;
  diag["tail_kernel_dim"] = cp.tail_kernel_dim;
  out["diagnostics"] = diag;
  return out;
}

nlohmann::json to_json(const IndexReport& rep) {
  json out;
  out["kernel_dim"] = rep.kernel_dim;
  out["cokernel_dim"] = rep.cokernel_dim;
  out["index"] = rep.index;
  out["method"] = rep.method;
  json res;
  for (const auto& [k, v] : rep.residuals) res[k] = v;
  out["residuals"] = res.is_null() ? json::object() : res;
  return out;
}

nlohmann::json to_json(const VerifySummary& sum) {
  json out;
  out["theorem"] = sum.theorem;
  out["draws"] = sum.draws;
  out["failures"] = sum.failures;
  out["max_residual"] = sum.max_residual;
  out["notes"] = sum.notes;
  return out;
}

CoefficientPath path_from_config(const nlohmann::json& config) {
  if (!config.is_object()) throw config_error("", "config must be an object");
  const json& fam = require(config, "family", "");
  if (!fam.is_string()) throw config_error("/family", "expected a string");
  std::string family = fam.get<std::string>();

  if (family == "constant") {
    DiracData d = dirac_from_json(require(config, "system", ""));
    double r = config.contains("r") ? require_number(config, "r", "") : 1.0;
    return constant_path(d, r);
  }
  if (family == "cylinder") {
    return cylinder_family(require_int(config, "K", ""),
                           require_number(config, "coupling", ""),
                           require_number(config, "r", ""));
  }
  if (family == "hyperbolic-even") {
    double r = config.contains("r") ? require_number(config, "r", "") : -1.0;
    return hyperbolic_even_path(require_int(config, "K", ""), r);
  }
  if (family == "hyperbolic-odd") {
    return hyperbolic_odd_path(require_int(config, "K", ""),
                               require_number(config, "horizon", ""));
  }
  if (family == "random-coupled") {
    int dim = require_int(config, "dim", "");
    int kdim = config.contains("kernel_dim") ? require_int(config, "kernel_dim", "") : 0;
    auto seed = static_cast<std::uint64_t>(require_int(config, "seed", ""));
    double coupling = require_number(config, "coupling", "");
    double r = config.contains("r") ? require_number(config, "r", "") : 1.0;
    DiracData d = random_system(dim, kdim, seed);
    return random_coupled_path(d, coupling, r, seed + 1);
  }
  if (family == "table") {
    DiracData d = dirac_from_json(require(config, "system", ""));
    double r = require_number(config, "r", "");
    const json& jt = require(config, "times", "");
    if (!jt.is_array() || jt.size() < 2)
      throw config_error("/times", "need at least two sample times");
    std::vector<double> times;
    for (size_t i = 0; i < jt.size(); ++i) {
      if (!jt[i].is_number())
        throw config_error("/times/" + std::to_string(i), "expected a number");
      times.push_back(jt[i].get<double>());
      if (i > 0 && times[i] <= times[i - 1])
        throw config_error("/times/" + std::to_string(i), "times must increase");
    }
    auto read_table = [&](const char* key) {
      const json& arr = require(config, key, "");
      if (!arr.is_array() || arr.size() != times.size())
        throw config_error(std::string("/") + key, "one matrix per sample time");
      std::vector<Matrix> tab;
      for (size_t i = 0; i < arr.size(); ++i)
        tab.push_back(matrix_rowmajor_from(arr[i], d.dim, d.dim,
                                           std::string("/") + key + "/" +
                                               std::to_string(i)));
      return tab;
    };
    std::vector<Matrix> a_tab = read_table("a");
    std::vector<Matrix> v_tab;
    if (config.contains("v")) v_tab = read_table("v");

    auto interpolate = [times](const std::vector<Matrix>& tab, double t) {
      if (t <= times.front()) return tab.front();
      if (t >= times.back()) return tab.back();
      size_t hi = 1;
      while (times[hi] < t) ++hi;
      double w = (t - times[hi - 1]) / (times[hi] - times[hi - 1]);
      return Matrix((1 - w) * tab[hi - 1] + w * tab[hi]);
    };

    CoefficientPath p;
    p.d = d;
    p.r = r;
    p.a_of_t = [a_tab, interpolate](double t) { return interpolate(a_tab, t); };
    if (!v_tab.empty())
      p.v_of_t = [v_tab, interpolate](double t) { return interpolate(v_tab, t); };
    double lip = 0.0;
    for (size_t i = 1; i < a_tab.size(); ++i)
      lip = std::max(lip, (a_tab[i] - a_tab[i - 1]).norm() / (times[i] - times[i - 1]));
    p.lipschitz_bound = lip * 1.0000001 + 1e-12;
    p.name = "table";
    return p;
  }
  throw config_error("/family", "unknown family " + family);
}

std::string dump_deterministic(const nlohmann::json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, &out);
  out += "\n";
  return out;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = "lambda,norm_mid,norm_far,s\n";
  for (const auto& r : rows) {
    out += format_double(r.lambda) + "," + format_double(r.norm_mid) + "," +
           format_double(r.norm_far) + "," + format_double(r.s) + "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << content;
  if (!f) throw std::runtime_error("failed writing " + path);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  json j;
  f >> j;
  return j;
}

}  // namespace halfline
