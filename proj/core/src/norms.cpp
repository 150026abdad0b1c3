#include "concentro/norms.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "concentro/errors.hpp"
#include "concentro/rng.hpp"

namespace concentro {

namespace {

// Constraint set of one block vector. distinguished < 0 is the unit ℓ2 ball;
// otherwise the ℓα(ℓ2) ball whose outer index is the block's
// `distinguished`-th position (0-based, ascending order).
struct BlockBall {
  int distinguished = -1;
  double alpha = 2.0;
};

struct Run {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> x;
  int sweeps = 0;
};

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::size_t ipow(int m, std::size_t k) { return block_length(m, k); }

// Row (value of the distinguished coordinate) of each entry of a block vector.
std::vector<int> row_labels(int m, std::size_t block_size, int distinguished) {
  const std::size_t len = ipow(m, block_size);
  const std::size_t stride = ipow(m, block_size - 1 - static_cast<std::size_t>(distinguished));
  std::vector<int> rows(len);
  for (std::size_t f = 0; f < len; ++f) rows[f] = static_cast<int>((f / stride) % m);
  return rows;
}

// ℓβ norm computed relative to the largest entry.
double beta_norm(const std::vector<double>& r, double beta) {
  const double top = *std::max_element(r.begin(), r.end());
  if (top == 0.0) return 0.0;
  double s = 0.0;
  for (double v : r) s += std::pow(v / top, beta);
  return top * std::pow(s, 1.0 / beta);
}

class BallGeometry {
 public:
  BallGeometry(const BlockBall& ball, int m, std::size_t block_size) : ball_(ball), m_(m) {
    if (ball_.distinguished >= 0) rows_ = row_labels(m, block_size, ball_.distinguished);
  }

  // Maximizes <g, x> over the ball, writing the maximizer into x. A zero
  // functional leaves x unchanged.
  double maximize(const std::vector<double>& g, std::vector<double>& x) const {
    if (ball_.distinguished < 0) {
      const double n = norm2(g);
      if (n == 0.0) return 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) x[i] = g[i] / n;
      return n;
    }
    const std::vector<double> r = row_norms(g);
    if (ball_.alpha == 1.0) {
      int best = 0;
      for (int j = 1; j < m_; ++j)
        if (r[j] > r[best]) best = j;
      if (r[best] == 0.0) return 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) x[i] = rows_[i] == best ? g[i] / r[best] : 0.0;
      return r[best];
    }
    const double beta = ball_.alpha / (ball_.alpha - 1.0);
    const double nb = beta_norm(r, beta);
    if (nb == 0.0) return 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double rj = r[rows_[i]];
      x[i] = rj > 0.0 ? std::pow(rj / nb, beta - 1.0) * g[i] / rj : 0.0;
    }
    return nb;
  }

  // Rescales a nonzero vector onto the boundary of the ball.
  void normalize(std::vector<double>& x) const {
    double n;
    if (ball_.distinguished < 0) {
      n = norm2(x);
    } else {
      const std::vector<double> r = row_norms(x);
      if (ball_.alpha == 1.0) {
        n = 0.0;
        for (double v : r) n += v;
      } else {
        n = beta_norm(r, ball_.alpha);
      }
    }
    if (n > 0.0)
      for (double& v : x) v /= n;
  }

 private:
  std::vector<double> row_norms(const std::vector<double>& g) const {
    std::vector<double> r(static_cast<std::size_t>(m_), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) r[rows_[i]] += g[i] * g[i];
    for (double& v : r) v = std::sqrt(v);
    return r;
  }

  BlockBall ball_;
  int m_;
  std::vector<int> rows_;
};

Run run_als(const Tensor& a, const SetPartition& part, const std::vector<BallGeometry>& balls,
            std::vector<std::vector<double>> x, double tol, int max_sweeps) {
  Run run;
  double prev = contract(a, part, x);
  double value = prev;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (std::size_t l = 0; l < part.size(); ++l) {
      const std::vector<double> g = contract_except(a, part, x, l);
      value = balls[l].maximize(g, x[l]);
    }
    run.sweeps = sweep;
    if (value - prev < tol * std::max(1.0, value)) break;
    prev = value;
  }
  run.value = value;
  run.x = std::move(x);
  return run;
}

std::vector<std::vector<double>> starting_point(const Tensor& a, const SetPartition& part,
                                                const std::vector<BallGeometry>& balls,
                                                int restart, std::uint64_t seed) {
  std::vector<std::vector<double>> x(part.size());
  CounterRng rng(seed + static_cast<std::uint64_t>(restart));
  for (std::size_t l = 0; l < part.size(); ++l) {
    x[l].resize(block_length(a.dim(), part[l].size()));
    if (restart == 0) {
      std::fill(x[l].begin(), x[l].end(), 1.0);
    } else {
      for (double& v : x[l]) v = rng.normal();
    }
    balls[l].normalize(x[l]);
  }
  return x;
}

void check_warm_start(const Tensor& a, const SetPartition& part,
                      const std::vector<std::vector<double>>& w) {
  if (w.size() != part.size())
    throw ShapeError("warm start has " + std::to_string(w.size()) + " blocks, partition has " +
                     std::to_string(part.size()));
  for (std::size_t l = 0; l < part.size(); ++l)
    if (w[l].size() != block_length(a.dim(), part[l].size()))
      throw ShapeError("warm start block " + std::to_string(l + 1) + " has wrong length");
}

// Best of all restarts; ties go to the earliest start.
Run best_of(const Tensor& a, const SetPartition& part, const std::vector<BallGeometry>& balls,
            const NormOptions& opts, bool use_warm, int& starts_used) {
  const int extra = use_warm && !opts.warm_start.empty() ? 1 : 0;
  const int total = opts.restarts + extra;
  std::vector<Run> runs(static_cast<std::size_t>(total));

  auto work = [&](int w, int nworkers) {
    for (int i = w; i < total; i += nworkers) {
      std::vector<std::vector<double>> x0;
      if (i < extra) {
        x0 = opts.warm_start;
        for (std::size_t l = 0; l < x0.size(); ++l) balls[l].normalize(x0[l]);
      } else {
        x0 = starting_point(a, part, balls, i - extra, opts.seed);
      }
      runs[i] = run_als(a, part, balls, std::move(x0), opts.tol, opts.max_sweeps);
    }
  };
  const int nworkers = std::min(opts.workers, total);
  if (nworkers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(work, w, nworkers);
    for (auto& t : pool) t.join();
  }

  starts_used = total;
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].value > runs[best].value) best = i;
  return std::move(runs[best]);
}

void check_partition(const Tensor& a, const SetPartition& part) {
  if (part.order() != a.order() || !part.is_full())
    throw ShapeError("partition " + part.to_string() + " does not partition [1," +
                     std::to_string(a.order()) + "]");
}

NormResult spectral(const Tensor& a, const SetPartition& part) {
  const auto rows = static_cast<Eigen::Index>(block_length(a.dim(), part[0].size()));
  const auto cols = static_cast<Eigen::Index>(block_length(a.dim(), part[1].size()));
  const std::vector<double> flat = matricize(a, part);
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      mat(flat.data(), rows, cols);

  Eigen::VectorXd u, v;
  if (rows <= cols) {
    const Eigen::MatrixXd gram = mat * mat.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    u = es.eigenvectors().col(rows - 1);
    v = mat.transpose() * u;
  } else {
    const Eigen::MatrixXd gram = mat.transpose() * mat;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    v = es.eigenvectors().col(cols - 1);
    u = mat * v;
    std::swap(u, v);  // u is now the unnormalized side
  }
  const double s = v.norm();
  v /= s;

  NormResult res;
  res.method = NormMethod::MatricizationSpectral;
  res.value = s;
  std::vector<double> first(u.data(), u.data() + u.size());
  std::vector<double> second(v.data(), v.data() + v.size());
  if (rows <= cols) {
    res.certificate = {std::move(first), std::move(second)};
  } else {
    res.certificate = {std::move(second), std::move(first)};
  }
  return res;
}

}  // namespace

void NormOptions::validate() const {
  if (restarts < 1) throw DomainError("restarts must be at least 1");
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  if (max_sweeps < 1) throw DomainError("max_sweeps must be at least 1");
  if (workers < 1) throw DomainError("workers must be at least 1");
}

std::string_view to_string(NormMethod m) {
  switch (m) {
    case NormMethod::Frobenius: return "frobenius";
    case NormMethod::MatricizationSpectral: return "matricization-spectral";
    case NormMethod::Als: return "als";
  }
  return "unknown";
}

NormResult norm_J(const Tensor& a, const SetPartition& part, const NormOptions& opts) {
  check_partition(a, part);
  opts.validate();
  if (!opts.warm_start.empty()) check_warm_start(a, part, opts.warm_start);

  NormResult res;
  if (opts.force_als || part.size() >= 3) {
    res.method = NormMethod::Als;
  } else if (part.size() == 2) {
    res.method = NormMethod::MatricizationSpectral;
  }

  if (a.is_zero()) {
    for (const auto& b : part.blocks())
      res.certificate.emplace_back(block_length(a.dim(), b.size()), 0.0);
    return res;
  }

  if (res.method == NormMethod::Frobenius) {
    res.value = a.frobenius();
    res.certificate.emplace_back(a.values().begin(), a.values().end());
    for (double& v : res.certificate[0]) v /= res.value;
    return res;
  }
  if (res.method == NormMethod::MatricizationSpectral) return spectral(a, part);

  std::vector<BallGeometry> balls;
  for (const auto& b : part.blocks()) balls.emplace_back(BlockBall{}, a.dim(), b.size());
  Run best = best_of(a, part, balls, opts, true, res.restarts_used);
  res.value = best.value;
  res.certificate = std::move(best.x);
  res.sweeps_used = best.sweeps;
  return res;
}

double norm_J_bruteforce(const Tensor& a, const SetPartition& part, long npoints,
                         std::uint64_t seed) {
  check_partition(a, part);
  if (npoints < 1) throw DomainError("npoints must be positive");
  const int d = a.order();
  const int m = a.dim();
  const std::size_t nb = part.size();

  std::vector<std::size_t> len(nb);
  std::size_t total = 0;
  for (std::size_t l = 0; l < nb; ++l) total += (len[l] = block_length(m, part[l].size()));
  if (total > 64)
    throw DomainError("brute-force search dimension " + std::to_string(total) + " exceeds 64");

  // Per entry, the offset of its index inside each block vector.
  const std::size_t n = a.size();
  std::vector<std::size_t> off(n * nb, 0);
  std::vector<int> idx(static_cast<std::size_t>(d));
  const auto owner = part.block_of();
  for (std::size_t f = 0; f < n; ++f) {
    a.unravel(f, idx);
    for (int k = 0; k < d; ++k) {
      std::size_t& o = off[f * nb + owner[k]];
      o = o * m + idx[k];
    }
  }
  const auto vals = a.values();

  CounterRng rng(seed, 0xB4D);
  std::vector<std::vector<double>> x(nb), g(nb);
  for (std::size_t l = 0; l < nb; ++l) {
    x[l].resize(len[l]);
    g[l].resize(len[l]);
  }
  double best = 0.0;
  for (long pt = 0; pt < npoints; ++pt) {
    for (std::size_t l = 0; l < nb; ++l) {
      double s = 0.0;
      for (double& v : x[l]) {
        v = rng.normal();
        s += v * v;
      }
      s = std::sqrt(s);
      for (double& v : x[l]) v /= s;
    }
    double value = 0.0, prev = -1.0;
    for (int sweep = 0; sweep < 50; ++sweep) {
      for (std::size_t l = 0; l < nb; ++l) {
        std::fill(g[l].begin(), g[l].end(), 0.0);
        for (std::size_t f = 0; f < n; ++f) {
          double w = vals[f];
          for (std::size_t k = 0; k < nb; ++k)
            if (k != l) w *= x[k][off[f * nb + k]];
          g[l][off[f * nb + l]] += w;
        }
        double s = 0.0;
        for (double v : g[l]) s += v * v;
        s = std::sqrt(s);
        if (s == 0.0) {
          value = 0.0;
          continue;
        }
        for (std::size_t i = 0; i < len[l]; ++i) x[l][i] = g[l][i] / s;
        value = s;
      }
      if (value - prev <= 1e-12 * std::max(1.0, value)) break;
      prev = value;
    }
    best = std::max(best, value);
  }
  return best;
}

MixedNormResult mixed_norm_terms(const Tensor& a, const SplitPartition& split, double alpha,
                                 const NormOptions& opts) {
  if (a.order() > 3) throw Unsupported("mixed norms are implemented for order <= 3 only");
  if (!(alpha >= 1.0 && alpha <= 2.0))
    throw DomainError("alpha=" + std::to_string(alpha) + " outside [1,2]");
  if (split.order != a.order())
    throw ShapeError("split " + split.to_string() + " has order " + std::to_string(split.order) +
                     ", tensor has order " + std::to_string(a.order()));
  opts.validate();

  MixedNormResult res;
  if (split.outer.empty()) {
    NormOptions o = opts;
    o.warm_start.clear();
    res.value = norm_J(a, split.inner, o).value;
    res.terms = {res.value};
    return res;
  }

  const SetPartition merged = split.merged();
  const auto& outer = split.outer.blocks();
  // Merged-block index of each outer block.
  std::vector<std::size_t> where(outer.size());
  for (std::size_t k = 0; k < outer.size(); ++k)
    where[k] = static_cast<std::size_t>(
        std::find(merged.blocks().begin(), merged.blocks().end(), outer[k]) -
        merged.blocks().begin());

  NormOptions o = opts;
  o.warm_start.clear();
  std::vector<int> choice(outer.size(), 0);
  while (true) {
    std::vector<BlockBall> spec(merged.size());
    for (std::size_t k = 0; k < outer.size(); ++k) spec[where[k]] = {choice[k], alpha};
    std::vector<BallGeometry> balls;
    for (std::size_t l = 0; l < merged.size(); ++l)
      balls.emplace_back(spec[l], a.dim(), merged[l].size());

    double term = 0.0;
    if (!a.is_zero()) {
      int used = 0;
      term = best_of(a, merged, balls, o, false, used).value;
    }
    res.terms.push_back(term);
    res.value += term;

    int k = static_cast<int>(outer.size()) - 1;
    while (k >= 0 && ++choice[k] == static_cast<int>(outer[k].size())) choice[k--] = 0;
    if (k < 0) break;
  }
  return res;
}

double mixed_norm(const Tensor& a, const SplitPartition& split, double alpha,
                  const NormOptions& opts) {
  return mixed_norm_terms(a, split, alpha, opts).value;
}

}  // namespace concentro
