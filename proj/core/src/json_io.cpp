#include "sseq/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sseq/error.hpp"

namespace sseq {

namespace {

int int_key(const std::string& key, const std::string& where) {
  int v = 0;
  const char* end = key.data() + key.size();
  auto [ptr, ec] = std::from_chars(key.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(where, "expected an integer key, got \"" + key + "\"");
  return v;
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

long long int_value(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
  return j.get<long long>();
}

std::size_t count_value(const json& j, const std::string& where) {
  long long v = int_value(j, where);
  if (v < 0) throw ParseError(where, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

// Matrix with shape taken from the document.
Matrix free_matrix(const json& j, std::size_t rows, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of rows");
  if (j.empty()) return Matrix(rows, 0);
  if (j.size() != rows)
    throw ParseError(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  if (!j[0].is_array()) throw ParseError(where + "[0]", "expected an array");
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError(w, "expected a row of length " + std::to_string(cols));
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalar_from_json(j[i][k], w + "[" + std::to_string(k) + "]");
  }
  return m;
}

std::size_t basis_ref(const json& j, const BigradedAlgebra& a, const std::string& where) {
  if (j.is_number_integer()) {
    long long i = j.get<long long>();
    if (i < 0 || static_cast<std::size_t>(i) >= a.dim()) throw ParseError(where, "basis index out of range");
    return static_cast<std::size_t>(i);
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (auto idx = a.find(s)) return *idx;
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      std::size_t i = static_cast<std::size_t>(int_key(s, where));
      if (i < a.dim()) return i;
    }
    throw ParseError(where, "unknown basis element \"" + s + "\"");
  }
  throw ParseError(where, "expected a basis name or index");
}

// Key lookup by name first, then by index.
std::size_t basis_key(const std::string& key, const BigradedAlgebra& a, const std::string& where) {
  return basis_ref(json(key), a, where);
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ":byte " + std::to_string(e.byte), e.what());
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

Scalar scalar_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Scalar(std::to_string(j.get<unsigned long long>()));
    return Scalar(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) {
    try {
      return parse_scalar(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where, e.what());
    }
  }
  throw ParseError(where, "expected a rational string \"a/b\" or an integer");
}

Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of rows");
  if (j.empty()) return Matrix(rows, cols);
  Matrix m = free_matrix(j, rows, where);
  if (m.cols() != cols) throw ParseError(where, "expected " + std::to_string(cols) + " columns, got " + std::to_string(m.cols()));
  return m;
}

ordered_json matrix_to_json(const Matrix& m) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(format_scalar(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

// ------------------------------------------------------------------ filtered complexes

FilteredComplex filtered_complex_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("$", "expected an object");
  const json& deg = require(j, "degrees", "$");
  if (!deg.is_array() || deg.size() != 2) throw ParseError("$.degrees", "expected [lo, hi]");
  const int lo = static_cast<int>(int_value(deg[0], "$.degrees[0]"));
  const int hi = static_cast<int>(int_value(deg[1], "$.degrees[1]"));
  if (lo > hi) throw ParseError("$.degrees", "lo must not exceed hi");

  std::vector<std::size_t> dims(static_cast<std::size_t>(hi - lo + 1));
  if (j.contains("dims")) {
    for (const auto& [key, v] : j.at("dims").items()) {
      const std::string w = "$.dims." + key;
      int n = int_key(key, w);
      if (n < lo || n > hi) throw ParseError(w, "degree outside [lo, hi]");
      dims[static_cast<std::size_t>(n - lo)] = count_value(v, w);
    }
  }
  auto dim = [&](int n) -> std::size_t { return (n < lo || n > hi) ? 0 : dims[static_cast<std::size_t>(n - lo)]; };

  std::vector<Matrix> ds;
  for (int n = lo; n < hi; ++n) ds.emplace_back(dim(n + 1), dim(n));
  if (j.contains("d")) {
    for (const auto& [key, v] : j.at("d").items()) {
      const std::string w = "$.d." + key;
      int n = int_key(key, w);
      if (n < lo || n >= hi) {
        Matrix m = matrix_from_json(v, dim(n + 1), dim(n), w);
        if (!m.is_zero()) throw ParseError(w, "differential outside the degree range must be zero");
        continue;
      }
      ds[static_cast<std::size_t>(n - lo)] = matrix_from_json(v, dim(n + 1), dim(n), w);
    }
  }
  CochainComplex k(lo, hi, dims, std::move(ds));

  if (!j.contains("filtration")) return FilteredComplex(k, trivial_filtration(k));
  std::map<int, std::map<int, Subspace>> given;
  for (const auto& [pkey, levels] : j.at("filtration").items()) {
    const std::string wp = "$.filtration." + pkey;
    int p = int_key(pkey, wp);
    if (!levels.is_object()) throw ParseError(wp, "expected an object keyed by degree");
    for (const auto& [nkey, basis] : levels.items()) {
      const std::string w = wp + "." + nkey;
      int n = int_key(nkey, w);
      if (n < lo || n > hi) throw ParseError(w, "degree outside [lo, hi]");
      Matrix b = free_matrix(basis, dim(n), w);
      given[p][n] = Subspace::column_span(b);
    }
  }
  if (given.empty()) return FilteredComplex(k, trivial_filtration(k));
  const int p_min = given.begin()->first;
  const int p_max = given.rbegin()->first;
  std::vector<std::vector<Subspace>> table;
  for (int p = p_min; p <= p_max; ++p) {
    std::vector<Subspace> row;
    for (int n = lo; n <= hi; ++n) {
      Subspace s = Subspace::zero(dim(n));
      for (auto it = given.lower_bound(p); it != given.end(); ++it) {
        auto f = it->second.find(n);
        if (f != it->second.end()) {
          s = f->second;
          break;
        }
      }
      row.push_back(std::move(s));
    }
    table.push_back(std::move(row));
  }
  return FilteredComplex(k, Filtration(lo, hi, dims, p_min, std::move(table)));
}

ordered_json filtered_complex_to_json(const FilteredComplex& fk) {
  const CochainComplex& k = fk.complex();
  ordered_json out;
  out["degrees"] = {k.lo(), k.hi()};
  ordered_json dims = ordered_json::object();
  for (int n = k.lo(); n <= k.hi(); ++n) dims[std::to_string(n)] = k.dim(n);
  out["dims"] = dims;
  ordered_json d = ordered_json::object();
  for (int n = k.lo(); n < k.hi(); ++n) d[std::to_string(n)] = matrix_to_json(k.d(n));
  out["d"] = d;
  ordered_json filt = ordered_json::object();
  const Filtration& f = fk.filtration();
  for (int p = f.p_low(); p <= f.p_high(); ++p) {
    ordered_json level = ordered_json::object();
    for (int n = k.lo(); n <= k.hi(); ++n) level[std::to_string(n)] = matrix_to_json(f.at(p, n).basis());
    filt[std::to_string(p)] = level;
  }
  out["filtration"] = filt;
  return out;
}

// ------------------------------------------------------------------ algebras

Vector algebra_vector_from_json(const json& j, const BigradedAlgebra& a, const std::string& where) {
  Vector v(a.dim());
  if (j.is_array()) {
    if (j.size() != a.dim()) throw ParseError(where, "expected " + std::to_string(a.dim()) + " coefficients");
    for (std::size_t i = 0; i < a.dim(); ++i) v[i] = scalar_from_json(j[i], where + "[" + std::to_string(i) + "]");
    return v;
  }
  if (j.is_object()) {
    for (const auto& [key, c] : j.items()) {
      const std::string w = where + "." + key;
      v[basis_key(key, a, w)] += scalar_from_json(c, w);
    }
    return v;
  }
  throw ParseError(where, "expected a coefficient array or a {basis: coefficient} object");
}

ordered_json algebra_vector_to_json(const Vector& v, const BigradedAlgebra& a) {
  ordered_json out = ordered_json::object();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out[a.element(i).name] = format_scalar(v[i]);
  return out;
}

VarietyModel model_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("$", "expected an object");
  const int n = static_cast<int>(int_value(require(j, "n", "$"), "$.n"));
  const json& bj = require(j, "basis", "$");
  if (!bj.is_array()) throw ParseError("$.basis", "expected an array");
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < bj.size(); ++i) {
    const std::string w = "$.basis[" + std::to_string(i) + "]";
    const json& e = bj[i];
    const json& name = require(e, "name", w);
    if (!name.is_string()) throw ParseError(w + ".name", "expected a string");
    basis.push_back({name.get<std::string>(),
                     {static_cast<int>(int_value(require(e, "p", w), w + ".p")),
                      static_cast<int>(int_value(require(e, "q", w), w + ".q"))}});
  }
  const std::size_t dim = basis.size();
  struct Lookup {
    std::vector<BasisElement> basis;
    std::optional<std::size_t> find(const std::string& s) const {
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].name == s) return i;
      return std::nullopt;
    }
  } lookup{basis};
  auto ref = [&](const std::string& key, const std::string& w) -> std::size_t {
    if (auto i = lookup.find(key)) return *i;
    int idx = int_key(key, w);
    if (idx < 0 || static_cast<std::size_t>(idx) >= dim) throw ParseError(w, "unknown basis element \"" + key + "\"");
    return static_cast<std::size_t>(idx);
  };
  auto vec = [&](const json& v, const std::string& w) {
    Vector out(dim);
    if (v.is_array()) {
      if (v.size() != dim) throw ParseError(w, "expected " + std::to_string(dim) + " coefficients");
      for (std::size_t i = 0; i < dim; ++i) out[i] = scalar_from_json(v[i], w + "[" + std::to_string(i) + "]");
    } else if (v.is_object()) {
      for (const auto& [key, c] : v.items()) out[ref(key, w + "." + key)] += scalar_from_json(c, w + "." + key);
    } else {
      throw ParseError(w, "expected a coefficient array or a {basis: coefficient} object");
    }
    return out;
  };

  std::map<std::pair<std::size_t, std::size_t>, Vector> products;
  if (j.contains("products")) {
    for (const auto& [key, v] : j.at("products").items()) {
      const std::string w = "$.products." + key;
      auto comma = key.find(',');
      if (comma == std::string::npos) throw ParseError(w, "expected a key \"i,j\"");
      std::size_t i = ref(key.substr(0, comma), w);
      std::size_t k = ref(key.substr(comma + 1), w);
      products[{i, k}] = vec(v, w);
    }
  }
  Vector unit(dim);
  if (j.contains("unit")) {
    unit = vec(j.at("unit"), "$.unit");
  } else if (auto u = lookup.find("1")) {
    unit[*u] = 1;
  } else {
    throw ParseError("$", "missing field \"unit\" and no basis element named \"1\"");
  }
  Vector omega = j.contains("omega") ? vec(j.at("omega"), "$.omega") : Vector(dim);
  Vector integral = j.contains("integral") ? vec(j.at("integral"), "$.integral") : Vector(dim);

  auto alg = std::make_shared<const BigradedAlgebra>(n, std::move(basis), std::move(products), std::move(unit));
  VarietyModel m{j.value("name", std::string("custom")), PolarizedAlgebra(alg, std::move(omega), std::move(integral)), {}, {}};
  if (j.contains("roles")) {
    const json& roles = j.at("roles");
    auto read = [&](const char* key, std::vector<std::size_t>& out) {
      if (!roles.contains(key)) return;
      const json& arr = roles.at(key);
      const std::string w = std::string("$.roles.") + key;
      if (!arr.is_array()) throw ParseError(w, "expected an array");
      for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(basis_ref(arr[i], *alg, w + "[" + std::to_string(i) + "]"));
    };
    read("h0_omega1", m.h0_omega1);
    read("h1_O", m.h1_O);
  }
  return m;
}

ordered_json model_to_json(const VarietyModel& m) {
  const BigradedAlgebra& a = m.algebra.algebra();
  ordered_json out;
  out["name"] = m.name;
  out["n"] = a.n();
  ordered_json basis = ordered_json::array();
  for (const auto& e : a.basis()) basis.push_back({{"name", e.name}, {"p", e.degree.p}, {"q", e.degree.q}});
  out["basis"] = basis;
  ordered_json products = ordered_json::object();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t k = 0; k < a.dim(); ++k) {
      const SparseVector& p = a.product(i, k);
      if (p.empty()) continue;
      ordered_json v = ordered_json::object();
      for (const auto& [t, c] : p) v[a.element(t).name] = format_scalar(c);
      products[a.element(i).name + "," + a.element(k).name] = v;
    }
  }
  out["products"] = products;
  out["unit"] = algebra_vector_to_json(a.unit(), a);
  out["omega"] = algebra_vector_to_json(m.algebra.omega(), a);
  out["integral"] = algebra_vector_to_json(m.algebra.integral(), a);
  ordered_json roles;
  roles["h0_omega1"] = ordered_json::array();
  roles["h1_O"] = ordered_json::array();
  for (std::size_t g : m.h0_omega1) roles["h0_omega1"].push_back(a.element(g).name);
  for (std::size_t g : m.h1_O) roles["h1_O"].push_back(a.element(g).name);
  out["roles"] = roles;
  return out;
}

// ------------------------------------------------------------------ derivations

Derivation derivation_from_json(const json& j, std::shared_ptr<const BigradedAlgebra> a) {
  if (!j.is_object()) throw ParseError("$", "expected an object");
  Bidegree shift{2, -1};
  if (j.contains("bidegree")) {
    const json& b = j.at("bidegree");
    if (!b.is_array() || b.size() != 2) throw ParseError("$.bidegree", "expected [r, 1-r]");
    shift = {static_cast<int>(int_value(b[0], "$.bidegree[0]")), static_cast<int>(int_value(b[1], "$.bidegree[1]"))};
  }
  const std::size_t dim = a->dim();
  Matrix m(dim, dim);
  const json& images = require(j, "derivation", "$");
  if (!images.is_object()) throw ParseError("$.derivation", "expected an object keyed by basis element");
  for (const auto& [key, v] : images.items()) {
    const std::string w = "$.derivation." + key;
    std::size_t i = basis_key(key, *a, w);
    Vector img = algebra_vector_from_json(v, *a, w);
    for (std::size_t k = 0; k < dim; ++k) m(k, i) = img[k];
  }
  return Derivation(std::move(a), shift, std::move(m));
}

ordered_json derivation_to_json(const Derivation& d) {
  const BigradedAlgebra& a = d.algebra();
  ordered_json out;
  out["bidegree"] = {d.shift().p, d.shift().q};
  ordered_json images = ordered_json::object();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vector v = d.image(i);
    if (!is_zero(v)) images[a.element(i).name] = algebra_vector_to_json(v, a);
  }
  out["derivation"] = images;
  return out;
}

ObstructionDatum alpha_from_json(const json& j, const VarietyModel& m, const Scalar& scale) {
  const BigradedAlgebra& a = m.algebra.algebra();
  const json& alpha = require(j, "alpha", "$");
  if (!alpha.is_object()) throw ParseError("$.alpha", "expected an object keyed by generator");
  ObstructionDatum od;
  od.scale = scale;
  for (const auto& [key, v] : alpha.items()) {
    const std::string w = "$.alpha." + key;
    od.alpha[basis_key(key, a, w)] = algebra_vector_from_json(v, a, w);
  }
  return od;
}

// ------------------------------------------------------------------ reports

ordered_json dims_to_json(const std::map<Bidegree, std::size_t>& dims) {
  ordered_json out = ordered_json::object();
  for (const auto& [b, d] : dims)
    if (d > 0) out[to_string(b)] = d;
  return out;
}

ordered_json certificate_to_json(const Certificate& c, const BigradedAlgebra& a) {
  ordered_json out;
  out["verdict"] = c.certified ? "certified" : "failed";
  out["failed_step"] = c.failed_step ? ordered_json(*c.failed_step) : ordered_json(nullptr);
  ordered_json steps = ordered_json::array();
  for (const auto& s : c.steps) {
    ordered_json st;
    st["step"] = s.step;
    st["name"] = s.name;
    st["statement"] = s.statement;
    st["passed"] = s.passed;
    if (s.witness) {
      ordered_json w;
      w["summary"] = s.witness->summary;
      if (s.witness->cell) w["cell"] = to_string(*s.witness->cell);
      ordered_json vs = ordered_json::object();
      for (const auto& [name, v] : s.witness->vectors) vs[name] = algebra_vector_to_json(v, a);
      w["vectors"] = vs;
      st["witness"] = w;
    }
    steps.push_back(std::move(st));
  }
  out["steps"] = steps;
  return out;
}

}  // namespace sseq
