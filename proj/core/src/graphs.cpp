#include "concentro/graphs.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "concentro/errors.hpp"

namespace concentro {

namespace {

double falling(int n, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= n - j;
  return r;
}

// Calls visit(map) for every injective map from `count` slots into {0..n-1}.
void for_each_injection(int count, int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> map(static_cast<std::size_t>(count), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<void(int)> rec = [&](int slot) {
    if (slot == count) {
      visit(map);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      map[slot] = v;
      rec(slot + 1);
      used[v] = false;
    }
  };
  rec(0);
}

// Sorted distinct vertices of an edge list.
std::vector<int> vertex_set(const std::vector<GraphSpec::Edge>& edges) {
  std::set<int> s;
  for (const auto& [u, v] : edges) {
    s.insert(u);
    s.insert(v);
  }
  return {s.begin(), s.end()};
}

struct TupleShape {
  int v0 = 0;        // vertices of H0
  int s0 = 0;        // s(H0)
  int s_blocks = 0;  // Σ_r s(H_r)
  int singly = 0;    // vertices covered by exactly one block
};

TupleShape tuple_shape(const GraphSpec& h, const std::vector<int>& seq, const SetPartition& part) {
  std::vector<GraphSpec::Edge> e0;
  for (int j : seq) e0.push_back(h.edges()[j]);
  TupleShape s;
  const auto verts = vertex_set(e0);
  s.v0 = static_cast<int>(verts.size());
  s.s0 = isolated_edge_count(e0);
  std::vector<int> cover(static_cast<std::size_t>(h.vertices()) + 1, 0);
  for (const auto& block : part.blocks()) {
    std::vector<GraphSpec::Edge> er;
    for (int j : block) er.push_back(e0[j - 1]);
    s.s_blocks += isolated_edge_count(er);
    for (int v : vertex_set(er)) ++cover[v];
  }
  s.singly = static_cast<int>(std::count(cover.begin(), cover.end(), 1));
  return s;
}

void check_edge_partition(const GraphSpec& h, const SetPartition& part) {
  const int d = part.order();
  if (d < 1 || !part.is_full()) throw ShapeError("partition must cover [1,d] with d >= 1");
  if (d > static_cast<int>(h.edges().size()))
    throw DomainError("d=" + std::to_string(d) + " exceeds the edge count of H");
}

double lp_factor(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0,1]");
  return 1.0 / std::sqrt(std::log(2.0 / p));
}

Eigen::MatrixXd adjacency(const std::vector<double>& edges, int n) {
  const EdgeIndex idx(n);
  if (edges.size() != static_cast<std::size_t>(idx.size()))
    throw ShapeError("edge vector has wrong length for n=" + std::to_string(n));
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int e = 0; e < idx.size(); ++e) {
    const auto [u, v] = idx.edge(e);
    a(u, v) = a(v, u) = edges[e];
  }
  return a;
}

}  // namespace

GraphSpec::GraphSpec(int k, std::vector<Edge> edges) : k_(k) {
  if (k < 2) throw DomainError("graph needs at least two vertices");
  for (auto [u, v] : edges) {
    if (u < 1 || u > k || v < 1 || v > k)
      throw DomainError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                        "} outside [1," + std::to_string(k) + "]");
    if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw DomainError("duplicate edge");
  if (static_cast<int>(vertex_set(edges_).size()) != k)
    throw DomainError("graph has isolated vertices");
}

GraphSpec GraphSpec::cycle(int k) {
  if (k < 3) throw DomainError("cycle needs k >= 3");
  std::vector<Edge> e;
  for (int v = 1; v <= k; ++v) e.emplace_back(v, v % k + 1);
  return GraphSpec(k, std::move(e));
}

GraphSpec GraphSpec::clique(int k) {
  std::vector<Edge> e;
  for (int u = 1; u <= k; ++u)
    for (int v = u + 1; v <= k; ++v) e.emplace_back(u, v);
  return GraphSpec(k, std::move(e));
}

bool GraphSpec::is_cycle() const {
  if (k_ < 3 || static_cast<int>(edges_.size()) != k_) return false;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(k_) + 1);
  for (const auto& [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (int v = 1; v <= k_; ++v)
    if (adj[v].size() != 2) return false;
  // 2-regular: a single cycle iff connected.
  int prev = 1, cur = adj[1][0], len = 1;
  while (cur != 1) {
    const int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = next;
    ++len;
  }
  return len == k_;
}

bool GraphSpec::is_clique() const {
  return static_cast<int>(edges_.size()) == k_ * (k_ - 1) / 2;
}

long GraphSpec::automorphisms() const {
  if (is_clique()) {
    long f = 1;
    for (int j = 2; j <= k_; ++j) f *= j;
    return f;
  }
  if (is_cycle()) return 2L * k_;
  if (k_ > 8) throw Unsupported("automorphism count for general graphs needs k <= 8");
  std::vector<int> perm(static_cast<std::size_t>(k_) + 1);
  std::iota(perm.begin(), perm.end(), 0);
  const std::set<Edge> es(edges_.begin(), edges_.end());
  long count = 0;
  do {
    bool ok = true;
    for (const auto& [u, v] : edges_)
      if (!es.count({std::min(perm[u], perm[v]), std::max(perm[u], perm[v])})) {
        ok = false;
        break;
      }
    count += ok;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return count;
}

EdgeIndex::EdgeIndex(int n) : n_(n), row_start_(static_cast<std::size_t>(std::max(n, 0)), 0) {
  if (n < 2) throw DomainError("edge index needs n >= 2");
  for (int u = 1; u < n; ++u) row_start_[u] = row_start_[u - 1] + (n - u);
}

int EdgeIndex::index(int u, int v) const {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) throw DomainError("invalid vertex pair");
  if (u > v) std::swap(u, v);
  return row_start_[u] + (v - u - 1);
}

std::pair<int, int> EdgeIndex::edge(int index) const {
  if (index < 0 || index >= size()) throw DomainError("edge position out of range");
  const int u = static_cast<int>(std::upper_bound(row_start_.begin(), row_start_.end(), index) -
                                 row_start_.begin()) - 1;
  return {u, u + 1 + (index - row_start_[u])};
}

Polynomial counting_polynomial(const GraphSpec& h, int n) {
  const int k = h.vertices();
  if (n < k) throw DomainError("n must be at least the vertex count of H");
  if (falling(n, k) > 2e7) throw DomainError("too many embeddings for the counting polynomial");
  const EdgeIndex idx(n);
  Polynomial f(idx.size());
  for_each_injection(k, n, [&](const std::vector<int>& map) {
    Monomial m;
    for (const auto& [u, v] : h.edges()) m.emplace_back(idx.index(map[u - 1], map[v - 1]), 1);
    f.add_term(std::move(m), 1.0);
  });
  return f;
}

TriangleNorms triangle_norms_exact(int n, double p) {
  if (n < 3) throw DomainError("triangle norms need n >= 3");
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0,1]");
  const double nn = n;
  TriangleNorms t;
  t.d1 = (nn - 2) * p * p * std::sqrt(nn * (nn - 1) / 2);
  t.d2_operator = 2 * p * (nn - 2);
  t.d2_frobenius = p * std::sqrt(nn * (nn - 1) * (nn - 2));
  t.d3_frobenius = std::sqrt(nn * (nn - 1) * (nn - 2));
  t.d3_pair_upper = std::sqrt(2 * nn);
  t.d3_triple_upper = std::pow(2.0, 1.5);
  return t;
}

int isolated_edge_count(const std::vector<GraphSpec::Edge>& edges) {
  std::vector<int> deg;
  for (const auto& [u, v] : edges) {
    const int top = std::max(u, v);
    if (static_cast<int>(deg.size()) <= top) deg.resize(static_cast<std::size_t>(top) + 1, 0);
    ++deg[u];
    ++deg[v];
  }
  int s = 0;
  for (const auto& [u, v] : edges) s += deg[u] == 1 && deg[v] == 1;
  return s;
}

double subgraph_norm_bound(const GraphSpec& h, const SetPartition& part, int n, double p) {
  check_edge_partition(h, part);
  const int d = part.order();
  const int e = static_cast<int>(h.edges().size());
  const int k = h.vertices();
  double sum = 0.0;
  std::vector<int> seq(static_cast<std::size_t>(d));
  for_each_injection(d, e, [&](const std::vector<int>& s) {
    const TupleShape sh = tuple_shape(h, s, part);
    sum += std::pow(2.0, 0.5 * sh.s_blocks) * std::pow(static_cast<double>(n), k - sh.v0 + 0.5 * sh.singly);
  });
  return std::pow(p, e - d) * sum;
}

CycleNormBound cycle_norm_bound(const GraphSpec& h, const SetPartition& part, int n, double p) {
  if (!h.is_cycle()) throw Unsupported("cycle_norm_bound needs H to be a cycle");
  CycleNormBound b;
  b.lemma_rhs = subgraph_norm_bound(h, part, n, p);
  const int k = h.vertices();
  const int d = part.order();
  const double l = static_cast<double>(part.size());
  const double nn = n;
  if (d == k && part.size() == 1) {
    b.shape = std::pow(nn, 0.5 * k);
  } else {
    b.shape = std::pow(p, k - d) * std::pow(nn, k - 0.5 * d - 0.5 * l);
  }
  return b;
}

Tensor indicator_tensor(const GraphSpec& h, const std::vector<int>& seq, int n) {
  const int d = static_cast<int>(seq.size());
  if (d < 1) throw DomainError("edge sequence is empty");
  std::vector<int> sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("edge sequence repeats an edge");
  for (int j : seq)
    if (j < 0 || j >= static_cast<int>(h.edges().size()))
      throw DomainError("edge position " + std::to_string(j) + " out of range");

  std::vector<GraphSpec::Edge> e0;
  for (int j : seq) e0.push_back(h.edges()[j]);
  const auto verts = vertex_set(e0);
  std::vector<int> slot(static_cast<std::size_t>(h.vertices()) + 1, -1);
  for (std::size_t i = 0; i < verts.size(); ++i) slot[verts[i]] = static_cast<int>(i);

  const EdgeIndex idx(n);
  Tensor shape(d, idx.size());  // enforces the size cap
  std::vector<double> vals(shape.size(), 0.0);
  for_each_injection(static_cast<int>(verts.size()), n, [&](const std::vector<int>& map) {
    std::size_t off = 0;
    for (const auto& [u, v] : e0)
      off = off * static_cast<std::size_t>(idx.size()) + idx.index(map[slot[u]], map[slot[v]]);
    vals[off] = 1.0;
  });
  return Tensor(d, idx.size(), std::move(vals));
}

IndicatorCheck indicator_norm_check(const GraphSpec& h, const std::vector<int>& seq,
                                    const SetPartition& part, int n, const NormOptions& opts) {
  if (part.order() != static_cast<int>(seq.size()) || !part.is_full())
    throw ShapeError("partition must cover the positions of the edge sequence");
  const Tensor a = indicator_tensor(h, seq, n);
  const TupleShape sh = tuple_shape(h, seq, part);
  IndicatorCheck c;
  c.lhs = norm_J(a, part, opts);
  const double nn = n;
  c.rhs = std::pow(2.0, -sh.s0 + 0.5 * sh.s_blocks) * std::pow(nn, 0.5 * sh.singly);
  c.lower_reference = std::pow(2.0, -sh.singly) * std::pow(nn, 0.5 * sh.singly);
  return c;
}

std::vector<double> sample_graph(int n, double p, CounterRng& rng) {
  const EdgeIndex idx(n);
  std::vector<double> x(static_cast<std::size_t>(idx.size()));
  for (double& v : x) v = rng.uniform() < p ? 1.0 : 0.0;
  return x;
}

double count_cycles_trace(const std::vector<double>& edges, int n, int k) {
  if (k < 3 || k > 5) throw Unsupported("trace cycle counts cover 3 <= k <= 5 only");
  const Eigen::MatrixXd a = adjacency(edges, n);
  const Eigen::MatrixXd a2 = a * a;
  if (k == 3) return a2.cwiseProduct(a).sum() / 6.0;
  const Eigen::VectorXd deg = a2.diagonal();
  if (k == 4) {
    const double tr4 = a2.squaredNorm();
    const double m = deg.sum() / 2.0;
    return (tr4 - 2.0 * deg.squaredNorm() + 2.0 * m) / 8.0;
  }
  const Eigen::MatrixXd a3 = a2 * a;
  const double tr5 = a2.cwiseProduct(a3).sum();
  double corr = 0.0;
  for (int i = 0; i < n; ++i) corr += a3(i, i) * (deg(i) - 1.0);
  return (tr5 - 5.0 * corr) / 10.0;
}

double count_cycles_bruteforce(const std::vector<double>& edges, int n, int k) {
  if (k < 3) throw DomainError("cycles need k >= 3");
  const Eigen::MatrixXd a = adjacency(edges, n);
  std::vector<int> path;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  double count = 0.0;
  // Paths start at their smallest vertex; each cycle is found in both directions.
  std::function<void(int)> extend = [&](int start) {
    const int last = path.back();
    if (static_cast<int>(path.size()) == k) {
      if (a(last, start) != 0.0) count += 1.0;
      return;
    }
    for (int v = start + 1; v < n; ++v) {
      if (used[v] || a(last, v) == 0.0) continue;
      used[v] = true;
      path.push_back(v);
      extend(start);
      path.pop_back();
      used[v] = false;
    }
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    used[s] = true;
    extend(s);
    used[s] = false;
  }
  return count / 2.0;
}

double expected_cycle_count(int k, int n, double p) {
  if (k < 3) throw DomainError("cycles need k >= 3");
  return falling(n, k) * std::pow(p, k) / (2.0 * k);
}

double triangle_tail_bound(int n, double p, double t, double C) {
  if (!(C > 0.0)) throw DomainError("C must be positive");
  if (!(t >= 0.0)) throw DomainError("t must be nonnegative");
  const double L = lp_factor(p);
  const double nn = n;
  const double a = t * t / (std::pow(L, 6) * nn * nn * nn + std::pow(L, 4) * p * p * nn * nn * nn +
                            L * L * std::pow(p, 4) * std::pow(nn, 4));
  const double b = t / (std::pow(L, 3) * std::sqrt(nn) + L * L * p * nn);
  const double c = std::pow(t, 2.0 / 3.0) / (L * L);
  return 2.0 * std::exp(-std::min({a, b, c}) / C);
}

double cycle_tail_bound(int k, int n, double p, double t, double C) {
  if (k < 3) throw DomainError("cycles need k >= 3");
  if (!(C > 0.0)) throw DomainError("C must be positive");
  if (!(t >= 0.0)) throw DomainError("t must be nonnegative");
  const double L = lp_factor(p);
  const double nn = n;
  double e = t * t / (std::pow(L, 2 * k) * std::pow(nn, k));
  for (int d = 1; d <= k; ++d)
    for (int l = 1; l <= d; ++l) {
      if (d == k && l == 1) continue;
      const double dl = l;
      e = std::min(e, std::pow(t, 2.0 / dl) /
                          (std::pow(L, 2.0 * d / dl) * std::pow(p, 2.0 * (k - d) / dl) *
                           std::pow(nn, (2.0 * k - d - dl) / dl)));
    }
  return 2.0 * std::exp(-e / C);
}

ErExperiment er_tail_experiment(int k, int n, double p, const std::vector<double>& t_list,
                                const MCConfig& cfg, double C) {
  if (k < 3 || k > 5) throw Unsupported("exact cycle counts are available for 3 <= k <= 5 only");
  if (n < k || n > 200) throw DomainError("n must lie in [k, 200]");
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0,1]");
  ErExperiment ex;
  ex.k = k;
  ex.n = n;
  ex.p = p;
  ex.expected = expected_cycle_count(k, n, p);
  const auto z = sample_values(
      [&](CounterRng& rng) { return count_cycles_trace(sample_graph(n, p, rng), n, k); }, cfg);
  const double nz = static_cast<double>(z.size());
  double s = 0.0;
  for (double v : z) s += v;
  ex.mean = s / nz;
  double var = 0.0;
  for (double v : z) var += (v - ex.mean) * (v - ex.mean);
  ex.std_error = z.size() > 1 ? std::sqrt(var / (nz - 1.0) / nz) : 0.0;
  for (double t : t_list) {
    ErTailRow r;
    r.t = t;
    r.empirical = tail_of(z, t);
    r.bound = k == 3 ? triangle_tail_bound(n, p, t, C) : cycle_tail_bound(k, n, p, t, C);
    ex.rows.push_back(r);
  }
  return ex;
}

}  // namespace concentro
