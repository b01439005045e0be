#include "flagcurv/cli/problem.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "flagcurv/error.hpp"

namespace flagcurv::cli {

namespace {

using nlohmann::json;

int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw_input(what + " must be an integer");
  return j.get<int>();
}

double as_real(const json& j, const std::string& what) {
  if (!j.is_number()) throw_input(what + " must be a number");
  return j.get<double>();
}

Vector parse_vector(const json& j, int dim, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw_input(what + " must be an array of " + std::to_string(dim) + " numbers");
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = as_real(j[static_cast<size_t>(i)], what);
  return v;
}

Matrix parse_matrix(const json& j, int dim, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw_input(what + " must be a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix or \"identity\"");
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) m.row(r) = parse_vector(j[static_cast<size_t>(r)], dim, what).transpose();
  return m;
}

// "identity", absent, or a matrix
std::optional<Matrix> parse_optional_matrix(const json& doc, const char* key, int dim) {
  if (!doc.contains(key)) return std::nullopt;
  const json& j = doc.at(key);
  if (j.is_string()) {
    if (j.get<std::string>() != "identity") throw_input(std::string(key) + ": only the string \"identity\" is accepted");
    return Matrix::Identity(dim, dim);
  }
  return parse_matrix(j, dim, key);
}

nlohmann::ordered_json matrix_json(const Matrix& m) {
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

bool is_identity(const Matrix& m) { return m == Matrix::Identity(m.rows(), m.cols()); }

}  // namespace

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

Problem load_from_string(const std::string& text, const std::string& origin, const Tolerances& tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw_input(origin + ": JSON parse error: " + e.what());
  }
  if (!doc.is_object()) throw_input(origin + ": top level must be an object");
  static const std::set<std::string> known{"name", "dim",   "basis", "brackets",   "g0",
                                           "phi",  "metric", "drift", "subalgebra"};
  for (const auto& [key, _] : doc.items())
    if (!known.count(key)) throw_input(origin + ": unknown field \"" + key + "\"");

  Problem p;
  p.origin = origin;
  p.digest = fnv1a64_hex(text);
  p.name = doc.contains("name") ? doc.at("name").get<std::string>() : origin;
  if (!doc.contains("dim")) throw_input(origin + ": missing field \"dim\"");
  const int dim = as_int(doc.at("dim"), "dim");
  if (dim <= 0) throw_input(origin + ": dim must be positive");

  std::vector<std::string> names;
  if (doc.contains("basis")) {
    for (const auto& b : doc.at("basis")) names.push_back(b.get<std::string>());
  }

  std::vector<BracketEntry> entries;
  if (doc.contains("brackets")) {
    for (const auto& e : doc.at("brackets")) {
      BracketEntry be;
      be.i = as_int(e.at("i"), "brackets.i");
      be.j = as_int(e.at("j"), "brackets.j");
      for (const auto& t : e.at("terms")) {
        if (!t.is_array() || t.size() != 2) throw_input("brackets.terms entries must be [k, coefficient]");
        be.terms.emplace_back(as_int(t[0], "brackets.terms.k"), as_real(t[1], "brackets.terms.coefficient"));
      }
      entries.push_back(std::move(be));
    }
  }
  LieAlgebra alg = LieAlgebra::from_brackets(dim, entries, names);

  const Matrix g0 = parse_optional_matrix(doc, "g0", dim).value_or(Matrix::Identity(dim, dim));
  p.g0_identity = is_identity(g0);
  const auto phi = parse_optional_matrix(doc, "phi", dim);
  const auto inner = parse_optional_matrix(doc, "metric", dim);
  if (phi && inner) throw_input(origin + ": \"phi\" and \"metric\" are mutually exclusive");
  MetricStructure metric = inner ? MetricStructure::from_inner(g0, *inner, tol)
                                 : MetricStructure::from_phi(g0, phi.value_or(Matrix::Identity(dim, dim)), tol);

  std::optional<ReductiveSplit> split;
  if (doc.contains("subalgebra")) {
    for (const auto& idx : doc.at("subalgebra")) {
      const int k = as_int(idx, "subalgebra");
      if (k < 0 || k >= dim) throw_input("subalgebra index " + std::to_string(k) + " out of range");
      p.subalgebra.push_back(k);
    }
    Matrix h(dim, static_cast<Eigen::Index>(p.subalgebra.size()));
    for (size_t c = 0; c < p.subalgebra.size(); ++c) h.col(static_cast<Eigen::Index>(c)) = Vector::Unit(dim, p.subalgebra[c]);
    split.emplace(h, g0);
  }

  const Vector drift = doc.contains("drift") ? parse_vector(doc.at("drift"), dim, "drift") : Vector::Zero(dim);
  p.randers.emplace(HomogeneousSpace(std::move(alg), std::move(metric), std::move(split), tol), drift);
  return p;
}

Problem load(const std::filesystem::path& path, const Tolerances& tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_input("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_from_string(ss.str(), path.string(), tol);
}

std::string serialize(const Problem& p) {
  const HomogeneousSpace& space = p.space();
  const LieAlgebra& alg = space.algebra();
  const int n = alg.dim();
  nlohmann::ordered_json doc;
  doc["name"] = p.name;
  doc["dim"] = n;
  doc["basis"] = alg.basis_names();
  using J = nlohmann::ordered_json;
  J brackets = J::array();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      J terms = J::array();
      for (int k = 0; k < n; ++k)
        if (alg.structure(i, j, k) != 0.0) terms.push_back(J::array({k, alg.structure(i, j, k)}));
      if (!terms.empty()) brackets.push_back(J{{"i", i}, {"j", j}, {"terms", terms}});
    }
  doc["brackets"] = brackets;
  const MetricStructure& g = space.metric();
  doc["g0"] = is_identity(g.g0()) ? J("identity") : matrix_json(g.g0());
  doc["phi"] = is_identity(g.phi()) ? J("identity") : matrix_json(g.phi());
  const Vector& x = p.structure().drift();
  doc["drift"] = std::vector<double>(x.data(), x.data() + x.size());
  if (!p.subalgebra.empty()) doc["subalgebra"] = p.subalgebra;
  return doc.dump(2) + "\n";
}

Vector parse_csv_vector(const std::string& text, int dim) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      vals.push_back(v);
    } catch (const std::exception&) {
      throw_usage("cannot parse \"" + item + "\" as a real number");
    }
  }
  if (static_cast<int>(vals.size()) != dim) {
    throw_usage("vector \"" + text + "\" has " + std::to_string(vals.size()) + " components, expected " +
                std::to_string(dim));
  }
  return Eigen::Map<const Vector>(vals.data(), dim);
}

}  // namespace flagcurv::cli
