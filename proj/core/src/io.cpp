#include "concentro/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "concentro/errors.hpp"
#include "json.hpp"

namespace concentro {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
  try {
    // allow_exceptions, no comments; NaN/Infinity literals are not JSON.
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
  return j.at(key);
}

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + ": value is not finite");
  return v;
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + ": expected an integer");
  return j.get<int>();
}

std::vector<std::vector<int>> int_pairs(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  std::vector<std::vector<int>> out;
  for (const auto& item : j) {
    if (!item.is_array()) throw ParseError(std::string(what) + ": expected nested arrays");
    std::vector<int> row;
    for (const auto& v : item) row.push_back(integer(v, what));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Tensor tensor_from_json(const std::string& text) {
  const json j = parse_json(text, "tensor");
  const int order = integer(field(j, "order", "tensor"), "tensor.order");
  const int dim = integer(field(j, "dim", "tensor"), "tensor.dim");
  const json& vals = field(j, "values", "tensor");
  if (!vals.is_array()) throw ParseError("tensor.values: expected an array");
  std::vector<double> values;
  values.reserve(vals.size());
  for (const auto& v : vals) values.push_back(finite_number(v, "tensor.values"));
  return Tensor(order, dim, std::move(values));
}

std::string tensor_to_json(const Tensor& a) {
  json j;
  j["order"] = a.order();
  j["dim"] = a.dim();
  j["values"] = std::vector<double>(a.values().begin(), a.values().end());
  return j.dump();
}

Tensor load_tensor(const std::string& path) { return tensor_from_json(read_file(path)); }

Polynomial polynomial_from_json(const std::string& text) {
  const json j = parse_json(text, "polynomial");
  const int nvars = integer(field(j, "nvars", "polynomial"), "polynomial.nvars");
  if (nvars < 0) throw ParseError("polynomial.nvars must be nonnegative");
  const json& terms = field(j, "terms", "polynomial");
  if (!terms.is_array()) throw ParseError("polynomial.terms: expected an array");
  Polynomial f(nvars);
  for (const auto& t : terms) {
    Monomial m;
    for (const auto& ep : int_pairs(field(t, "exps", "polynomial term"), "polynomial.exps")) {
      if (ep.size() != 2) throw ParseError("polynomial.exps: entries must be [var, power]");
      if (ep[0] < 1 || ep[0] > nvars)
        throw ParseError("polynomial.exps: variable " + std::to_string(ep[0]) + " outside [1," +
                         std::to_string(nvars) + "]");
      if (ep[1] < 0) throw ParseError("polynomial.exps: negative power");
      if (ep[1] > 0) m.emplace_back(ep[0] - 1, ep[1]);
    }
    f.add_term(std::move(m), finite_number(field(t, "coef", "polynomial term"), "polynomial.coef"));
  }
  return f;
}

std::string polynomial_to_json(const Polynomial& f) {
  json terms = json::array();
  for (const auto& [mono, coef] : f.terms()) {
    json exps = json::array();
    for (const auto& [var, pw] : mono) exps.push_back({var + 1, pw});
    terms.push_back({{"exps", exps}, {"coef", coef}});
  }
  return json{{"nvars", f.nvars()}, {"terms", terms}}.dump();
}

Polynomial load_polynomial(const std::string& path) {
  return polynomial_from_json(read_file(path));
}

ProductDistribution distribution_from_json(const std::string& text, int default_n) {
  const json j = parse_json(text, "distribution");
  const std::string law = field(j, "law", "distribution").get<std::string>();
  const int n = j.contains("n") ? integer(j["n"], "distribution.n") : default_n;
  auto num = [&](const char* key) { return finite_number(field(j, key, "distribution"), key); };

  ProductDistribution dist = [&] {
    if (law == "gaussian") return ProductDistribution::gaussian(n);
    if (law == "rademacher") return ProductDistribution::rademacher(n);
    if (law == "bernoulli") return ProductDistribution::bernoulli(n, num("p"));
    if (law == "weibull") return ProductDistribution::weibull(n, num("alpha"));
    if (law == "moments") {
      std::vector<double> table;
      for (const auto& v : field(j, "moments", "distribution"))
        table.push_back(finite_number(v, "distribution.moments"));
      std::optional<double> psi2;
      if (j.contains("psi2")) psi2 = num("psi2");
      return ProductDistribution::from_moments(n, std::move(table), psi2);
    }
    throw ParseError("distribution.law: unknown law \"" + law + "\"");
  }();
  if (j.contains("L") || j.contains("gamma")) {
    SobolevPair s;
    if (j.contains("L")) s.L = num("L");
    if (j.contains("gamma")) s.gamma = num("gamma");
    dist = dist.with_sobolev(s);
  }
  return dist;
}

GraphSpec graph_from_json(const std::string& text) {
  const json j = parse_json(text, "graph");
  const int k = integer(field(j, "k", "graph"), "graph.k");
  std::vector<GraphSpec::Edge> edges;
  for (const auto& e : int_pairs(field(j, "edges", "graph"), "graph.edges")) {
    if (e.size() != 2) throw ParseError("graph.edges: entries must be [u, v]");
    edges.emplace_back(e[0], e[1]);
  }
  return GraphSpec(k, std::move(edges));
}

GraphSpec load_graph(const std::string& path) { return graph_from_json(read_file(path)); }

SetPartition partition_from_text(const std::string& text, int order) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos || text[first] != '[') return SetPartition::parse(text, order);
  std::vector<Block> blocks;
  for (auto& b : int_pairs(parse_json(text, "partition"), "partition")) blocks.push_back(std::move(b));
  return SetPartition(order, std::move(blocks));
}

std::string certificate_to_json(const NormResult& r) {
  json j;
  j["value"] = r.value;
  j["method"] = std::string(to_string(r.method));
  j["lower_bound"] = r.lower_bound();
  j["sweeps"] = r.sweeps_used;
  j["restarts"] = r.restarts_used;
  j["vectors"] = r.certificate;
  return j.dump(2);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvWriter::meta(const std::string& key, const std::string& value) {
  meta_.emplace_back(key, value);
}

void CsvWriter::meta(const std::string& key, double value) { meta(key, format_number(value)); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size())
    throw ShapeError("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                     std::to_string(columns_.size()));
  rows_.push_back(cells);
}

void CsvWriter::write(std::ostream& os) const {
  auto cell = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  for (const auto& [k, v] : meta_) os << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << cell(columns_[i]);
  os << "\n";
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell(r[i]);
    os << "\n";
  }
}

std::string CsvWriter::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace concentro
