#include "concentro/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "concentro/errors.hpp"

namespace concentro {

namespace {

double fixed_sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

std::vector<std::vector<double>> singleton_blocks(int d) {
  return std::vector<std::vector<double>>(static_cast<std::size_t>(d));
}

SetPartition finest(int d) {
  std::vector<Block> blocks;
  for (int k = 1; k <= d; ++k) blocks.push_back({k});
  return SetPartition(d, std::move(blocks));
}

}  // namespace

double MCConfig::max_p() const { return std::log(static_cast<double>(N)) / 1.5; }

void MCConfig::validate() const {
  if (N < 1) throw DomainError("N must be at least 1");
  if (batch < 1) throw DomainError("batch must be at least 1");
  if (workers < 1) throw DomainError("workers must be at least 1");
  for (double p : p_list) {
    if (!(p >= 2.0)) throw DomainError("moment order p=" + std::to_string(p) + " is below 2");
    if (p > max_p()) {
      std::ostringstream os;
      os.precision(6);
      os << "moment order p=" << p << " too large for N=" << N << " (max admissible p is "
         << max_p() << ")";
      throw DomainError(os.str());
    }
  }
}

std::vector<double> sample_vector(const ProductDistribution& dist, CounterRng& rng) {
  std::vector<double> x(static_cast<std::size_t>(dist.n()));
  for (double& v : x) v = dist.draw(rng);
  return x;
}

std::vector<double> sample_rows(
    const std::function<void(CounterRng&, std::span<double>)>& draw, int width,
    const MCConfig& cfg) {
  if (cfg.N < 1 || cfg.batch < 1 || cfg.workers < 1)
    throw DomainError("sampling needs N, batch and workers >= 1");
  if (width < 1) throw DomainError("row width must be positive");
  const auto w = static_cast<std::size_t>(width);
  std::vector<double> out(static_cast<std::size_t>(cfg.N) * w);
  const long chunks = (cfg.N + cfg.batch - 1) / cfg.batch;
  auto work = [&](long first, long step) {
    for (long c = first; c < chunks; c += step) {
      CounterRng rng(cfg.seed, static_cast<std::uint64_t>(c));
      const long lo = c * cfg.batch;
      const long hi = std::min(cfg.N, lo + cfg.batch);
      for (long j = lo; j < hi; ++j)
        draw(rng, std::span<double>(out.data() + static_cast<std::size_t>(j) * w, w));
    }
  };
  const long nworkers = std::min<long>(cfg.workers, chunks);
  if (nworkers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (long k = 0; k < nworkers; ++k) pool.emplace_back(work, k, nworkers);
    for (auto& t : pool) t.join();
  }
  return out;
}

std::vector<double> sample_values(const std::function<double(CounterRng&)>& draw,
                                  const MCConfig& cfg) {
  return sample_rows([&](CounterRng& rng, std::span<double> row) { row[0] = draw(rng); }, 1, cfg);
}

std::vector<double> sample_polynomial(const Polynomial& f, const ProductDistribution& dist,
                                      const MCConfig& cfg) {
  if (f.nvars() != dist.n())
    throw ShapeError("polynomial has " + std::to_string(f.nvars()) +
                     " variables, distribution has n=" + std::to_string(dist.n()));
  return sample_values(
      [&](CounterRng& rng) {
        const auto x = sample_vector(dist, rng);
        return f.evaluate(x);
      },
      cfg);
}

std::vector<MomentEstimate> centered_moments(std::span<const double> z,
                                             std::span<const double> p_list) {
  if (z.empty()) throw DomainError("no samples");
  const double n = static_cast<double>(z.size());
  const double mean = fixed_sum(z) / n;
  std::vector<MomentEstimate> out;
  std::vector<double> y(z.size());
  for (double p : p_list) {
    for (std::size_t j = 0; j < z.size(); ++j) y[j] = std::pow(std::abs(z[j] - mean), p);
    const double m = fixed_sum(y) / n;
    double var = 0.0;
    for (double v : y) var += (v - m) * (v - m);
    var = z.size() > 1 ? var / (n - 1.0) : 0.0;
    MomentEstimate e;
    e.p = p;
    e.N = static_cast<long>(z.size());
    e.value = std::pow(m, 1.0 / p);
    e.std_error = m > 0.0 ? std::pow(m, 1.0 / p - 1.0) / p * std::sqrt(var / n) : 0.0;
    out.push_back(e);
  }
  return out;
}

std::vector<MomentEstimate> empirical_moment(const Polynomial& f, const ProductDistribution& dist,
                                             const MCConfig& cfg) {
  cfg.validate();
  const auto z = sample_polynomial(f, dist, cfg);
  return centered_moments(z, cfg.p_list);
}

TailEstimate tail_of(std::span<const double> z, double t) {
  if (z.empty()) throw DomainError("no samples");
  const double n = static_cast<double>(z.size());
  const double mean = fixed_sum(z) / n;
  TailEstimate e;
  e.t = t;
  e.N = static_cast<long>(z.size());
  for (double v : z)
    if (std::abs(v - mean) >= t) ++e.count;
  e.prob = static_cast<double>(e.count) / n;
  constexpr double zq = 1.959963984540054;
  const double z2 = zq * zq;
  const double centre = (e.prob + z2 / (2 * n)) / (1 + z2 / n);
  const double half = zq / (1 + z2 / n) * std::sqrt(e.prob * (1 - e.prob) / n + z2 / (4 * n * n));
  e.lower = std::max(0.0, centre - half);
  e.upper = std::min(1.0, centre + half);
  return e;
}

TailEstimate empirical_tail(const Polynomial& f, const ProductDistribution& dist, double t,
                            const MCConfig& cfg) {
  if (cfg.N < 1000) throw DomainError("empirical_tail needs N >= 1000");
  if (!(t >= 0.0)) throw DomainError("t must be nonnegative");
  const auto z = sample_polynomial(f, dist, cfg);
  return tail_of(z, t);
}

void validate_tetrahedral(const Tensor& a) {
  if (!a.is_symmetric(1e-12)) throw DomainError("undecoupled chaos needs a symmetric tensor");
  const int d = a.order();
  std::vector<int> idx(static_cast<std::size_t>(d));
  const auto vals = a.values();
  for (std::size_t f = 0; f < vals.size(); ++f) {
    if (vals[f] == 0.0) continue;
    a.unravel(f, idx);
    for (int j = 0; j < d; ++j)
      for (int k = j + 1; k < d; ++k)
        if (idx[j] == idx[k]) {
          std::ostringstream os;
          os << "entry (";
          for (int q = 0; q < d; ++q) os << (q ? "," : "") << idx[q] + 1;
          os << ") on the generalized diagonal i" << j + 1 << "=i" << k + 1
             << " is nonzero; undecoupled chaos needs zero diagonals";
          throw DomainError(os.str());
        }
  }
}

MomentEstimate chaos_moment(const Tensor& a, ChaosMode mode, double p, const MCConfig& cfg) {
  MCConfig c = cfg;
  c.p_list = {p};
  c.validate();
  if (mode == ChaosMode::Undecoupled) validate_tetrahedral(a);
  const int d = a.order();
  const int m = a.dim();
  const SetPartition part = finest(d);
  const auto z = sample_values(
      [&](CounterRng& rng) {
        auto blocks = singleton_blocks(d);
        if (mode == ChaosMode::Decoupled) {
          for (auto& b : blocks) {
            b.resize(static_cast<std::size_t>(m));
            for (double& v : b) v = rng.normal();
          }
        } else {
          std::vector<double> g(static_cast<std::size_t>(m));
          for (double& v : g) v = rng.normal();
          for (auto& b : blocks) b = g;
        }
        return contract(a, part, blocks);
      },
      c);
  const std::vector<double> ps{p};
  return centered_moments(z, ps).front();
}

std::vector<SandwichRow> sandwich_check(const Polynomial& f, const ProductDistribution& dist,
                                        const MCConfig& cfg,
                                        const std::function<BoundReport(double)>& bound,
                                        double window) {
  cfg.validate();
  if (!(window >= 1.0)) throw DomainError("ratio window must be >= 1");
  const auto z = sample_polynomial(f, dist, cfg);
  const auto est = centered_moments(z, cfg.p_list);
  std::vector<SandwichRow> rows;
  for (const auto& e : est) {
    SandwichRow r;
    r.p = e.p;
    r.empirical = e.value;
    r.std_error = e.std_error;
    r.bound = bound(e.p).total;
    if (r.bound == 0.0) {
      r.degenerate = true;
      r.ratio = std::numeric_limits<double>::quiet_NaN();
      r.pass = r.empirical == 0.0;
    } else {
      r.ratio = r.empirical / r.bound;
      r.pass = r.ratio >= 1.0 / window && r.ratio <= window;
    }
    rows.push_back(r);
  }
  return rows;
}

std::vector<HermiteRow> hermite_tetrahedral_convergence(int d, std::span<const long> n_list,
                                                        const MCConfig& cfg) {
  if (d < 1 || d > 4) throw DomainError("hermite convergence supports 1 <= d <= 4");
  double dfact = 1.0;
  for (int j = 2; j <= d; ++j) dfact *= j;
  std::vector<HermiteRow> rows;
  for (long nt : n_list) {
    if (nt < d) throw DomainError("each N must be at least d");
    MCConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(nt);
    const double root = std::sqrt(static_cast<double>(nt));
    double scale = 1.0;
    for (int j = 0; j < d; ++j) scale *= root;
    const auto sq = sample_values(
        [&](CounterRng& rng) {
          // e[k] is the k-th elementary symmetric polynomial of the draws so far.
          double e[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
          double sum = 0.0;
          for (long j = 0; j < nt; ++j) {
            const double x = rng.normal();
            sum += x;
            for (int k = d; k >= 1; --k) e[k] += x * e[k - 1];
          }
          const double delta = hermite_value(d, sum / root) - dfact * e[d] / scale;
          return delta * delta;
        },
        c);
    HermiteRow r;
    r.n_terms = nt;
    const double n = static_cast<double>(sq.size());
    r.mean_sq = fixed_sum(sq) / n;
    double var = 0.0;
    for (double v : sq) var += (v - r.mean_sq) * (v - r.mean_sq);
    r.std_error = sq.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
    if (d == 1) {
      r.exact = 0.0;
    } else if (d == 2) {
      r.exact = 2.0 / static_cast<double>(nt);
    } else {
      r.exact = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(r);
  }
  return rows;
}

std::vector<SobolevRow> sobolev_check(const ProductDistribution& dist, const Polynomial& f,
                                      const MCConfig& cfg, double max_ratio) {
  const auto pair = dist.sobolev();
  if (!pair) throw DomainError("law " + to_string(dist.law()) + " has no Sobolev pair configured");
  cfg.validate();
  if (f.nvars() != dist.n()) throw ShapeError("polynomial and distribution dimensions differ");
  std::vector<Polynomial> grad;
  for (int i = 0; i < f.nvars(); ++i) grad.push_back(f.derivative(i));

  // Both passes replay the same streams, so value i of each comes from the same X.
  const auto values = sample_polynomial(f, dist, cfg);
  const auto gnorm = sample_values(
      [&](CounterRng& rng) {
        const auto x = sample_vector(dist, rng);
        double g2 = 0.0;
        for (const auto& g : grad) {
          const double v = g.evaluate(x);
          g2 += v * v;
        }
        return std::sqrt(g2);
      },
      cfg);

  const auto lhs = centered_moments(values, cfg.p_list);
  std::vector<SobolevRow> rows;
  for (std::size_t k = 0; k < cfg.p_list.size(); ++k) {
    const double p = cfg.p_list[k];
    double s = 0.0;
    for (double v : gnorm) s += std::pow(v, p);
    const double gp = std::pow(s / static_cast<double>(gnorm.size()), 1.0 / p);
    SobolevRow r;
    r.p = p;
    r.lhs = lhs[k].value;
    r.rhs = pair->L * std::pow(p, pair->gamma) * gp;
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
    r.pass = r.ratio <= max_ratio;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace concentro
