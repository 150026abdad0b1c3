#pragma once

#include <utility>
#include <vector>

#include "concentro/montecarlo.hpp"
#include "concentro/norms.hpp"
#include "concentro/poly.hpp"

namespace concentro {

/// Simple graph on vertices 1..k with no isolated vertices.
class GraphSpec {
 public:
  using Edge = std::pair<int, int>;

  GraphSpec(int k, std::vector<Edge> edges);

  static GraphSpec cycle(int k);
  static GraphSpec clique(int k);

  int vertices() const { return k_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool is_cycle() const;
  bool is_clique() const;
  /// #Aut(H): 2k for cycles, k! for cliques, enumeration otherwise (k ≤ 8).
  long automorphisms() const;

 private:
  int k_;
  std::vector<Edge> edges_;  // 1-based, first < second, sorted
};

/// Lexicographic numbering of the unordered pairs of {0..n-1}.
class EdgeIndex {
 public:
  explicit EdgeIndex(int n);

  int n() const { return n_; }
  int size() const { return n_ * (n_ - 1) / 2; }
  /// Position of {u, v}, u ≠ v, 0-based vertices.
  int index(int u, int v) const;
  std::pair<int, int> edge(int index) const;

 private:
  int n_;
  std::vector<int> row_start_;
};

/// X_H(x) = Σ over injective i: V(H) → [n] of Π_{uv ∈ E(H)} x_{i(u)i(v)}, over
/// the n(n-1)/2 edge variables. Y_H = X_H / #Aut(H) counts copies.
Polynomial counting_polynomial(const GraphSpec& h, int n);

/// Exact norms of the expected derivatives of the triangle count Y_{K3} in
/// G(n, p), with the two cross-partition upper bounds of order 3.
struct TriangleNorms {
  double d1 = 0.0;            // ‖E D Y‖
  double d2_operator = 0.0;   // ‖E D² Y‖_{1|2}
  double d2_frobenius = 0.0;  // ‖E D² Y‖_{1,2}
  double d3_frobenius = 0.0;  // ‖E D³ Y‖_{1,2,3}
  double d3_pair_upper = 0.0;    // bound for ‖E D³ Y‖_{1,2|3} and its relabelings
  double d3_triple_upper = 0.0;  // bound for ‖E D³ Y‖_{1|2|3}
};

TriangleNorms triangle_norms_exact(int n, double p);

/// s(G) for the subgraph spanned by the given edges: edges with no adjacent edge.
int isolated_edge_count(const std::vector<GraphSpec::Edge>& edges);

/// Right-hand side of the bound on ‖E D^d X_H‖_J obtained from the
/// indicator-tensor estimate, summed over ordered d-tuples of distinct edges.
double subgraph_norm_bound(const GraphSpec& h, const SetPartition& partition, int n, double p);

struct CycleNormBound {
  double lemma_rhs = 0.0;  // subgraph_norm_bound for the cycle
  double shape = 0.0;      // n^{k/2} if d = k and J = {[k]}, else p^{k-d} n^{k-(d+l)/2}
};

CycleNormBound cycle_norm_bound(const GraphSpec& h, const SetPartition& partition, int n,
                                double p);

/// Order-d tensor over edge positions: 1 at (ẽ_1..ẽ_d) when some injective
/// vertex map sends the chosen edges of H onto them in order.
Tensor indicator_tensor(const GraphSpec& h, const std::vector<int>& edge_seq, int n);

struct IndicatorCheck {
  NormResult lhs;
  double rhs = 0.0;
  /// 2^{-#V0} n^{#V0/2}, V0 the vertices covered by exactly one block.
  double lower_reference = 0.0;
};

/// edge_seq holds distinct 0-based positions into h.edges(); the partition
/// acts on [edge_seq.size()].
IndicatorCheck indicator_norm_check(const GraphSpec& h, const std::vector<int>& edge_seq,
                                    const SetPartition& partition, int n,
                                    const NormOptions& opts = {});

/// Edge indicators of G(n, p) in EdgeIndex order.
std::vector<double> sample_graph(int n, double p, CounterRng& rng);

/// Number of k-cycles (3 ≤ k ≤ 5) from closed-walk traces of the adjacency
/// matrix with backtracking corrections.
double count_cycles_trace(const std::vector<double>& edges, int n, int k);
/// Same count by depth-first enumeration; any k ≥ 3.
double count_cycles_bruteforce(const std::vector<double>& edges, int n, int k);

/// E Y_{C_k}(n, p) = n^{(k)} p^k / (2k); the triangle case is C(n,3) p³.
double expected_cycle_count(int k, int n, double p);

/// Tail bound for the triangle count with L_p = log(2/p)^{-1/2}.
double triangle_tail_bound(int n, double p, double t, double C = 1.0);
/// Tail bound for the k-cycle count; agrees with triangle_tail_bound in
/// shape at k = 3 up to grouping of the denominators.
double cycle_tail_bound(int k, int n, double p, double t, double C = 1.0);

struct ErTailRow {
  double t = 0.0;
  TailEstimate empirical;
  double bound = 0.0;
};

struct ErExperiment {
  int k = 3;
  int n = 0;
  double p = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  double expected = 0.0;
  std::vector<ErTailRow> rows;
};

/// cfg.N samples of Y_{C_k}(n, p), k ≤ 5, n ≤ 200.
ErExperiment er_tail_experiment(int k, int n, double p, const std::vector<double>& t_list,
                                const MCConfig& cfg, double C = 1.0);

}  // namespace concentro
