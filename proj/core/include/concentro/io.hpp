#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "concentro/graphs.hpp"
#include "concentro/norms.hpp"
#include "concentro/partitions.hpp"
#include "concentro/poly.hpp"
#include "concentro/tensor.hpp"

namespace concentro {

/// Whole file as a string; ParseError naming the path when it cannot be read.
std::string read_file(const std::string& path);

/// {"order": d, "dim": m, "values": [m^d finite reals, row-major]}
Tensor tensor_from_json(const std::string& text);
std::string tensor_to_json(const Tensor& a);
Tensor load_tensor(const std::string& path);

/// {"nvars": n, "terms": [{"exps": [[var, power], ...], "coef": c}, ...]},
/// variables 1-based.
Polynomial polynomial_from_json(const std::string& text);
std::string polynomial_to_json(const Polynomial& f);
Polynomial load_polynomial(const std::string& path);

/// {"law": "gaussian"|"rademacher"|"bernoulli"|"weibull"|"moments", "n": .., "p": ..,
///  "alpha": .., "moments": [..], "psi2": .., "L": .., "gamma": ..}.
/// `default_n` is used when "n" is absent.
ProductDistribution distribution_from_json(const std::string& text, int default_n);

/// {"k": 3, "edges": [[1,2],[2,3],[1,3]]}
GraphSpec graph_from_json(const std::string& text);
GraphSpec load_graph(const std::string& path);

/// Either the text form "1,2|3" or a JSON array of blocks [[1,2],[3]].
SetPartition partition_from_text(const std::string& text, int order);

std::string certificate_to_json(const NormResult& r);

/// 12 significant digits, shortest form.
std::string format_number(double v);

/// CSV report: "# key=value" echo lines, then a header row, then data rows.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);

  void meta(const std::string& key, const std::string& value);
  void meta(const std::string& key, double value);
  void row(const std::vector<std::string>& cells);

  void write(std::ostream& os) const;
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace concentro
