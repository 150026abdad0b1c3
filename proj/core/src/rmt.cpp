#include "concentro/rmt.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "concentro/errors.hpp"

namespace concentro {

namespace {

void require_univariate(const Polynomial& f) {
  if (f.nvars() != 1)
    throw ShapeError("expected a polynomial in one variable, got nvars=" + std::to_string(f.nvars()));
}

double catalan(int k) {
  double c = 1.0;
  for (int j = 0; j < k; ++j) c = c * 2.0 * (2.0 * j + 1.0) / (j + 2.0);
  return std::round(c);
}

double mean_and_stderr(const std::vector<double>& v, double& se) {
  const double n = static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += x;
  const double m = s / n;
  double var = 0.0;
  for (double x : v) var += (x - m) * (x - m);
  se = v.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
  return m;
}

}  // namespace

std::string to_string(WignerConvention c) {
  return c == WignerConvention::Goe ? "goe" : "unit";
}

std::vector<double> sample_wigner(const WignerSpec& spec, CounterRng& rng) {
  const int n = spec.n;
  if (n < 1) throw DomainError("matrix size must be positive");
  const double diag_scale = spec.convention == WignerConvention::Goe ? std::sqrt(2.0) : 1.0;
  std::vector<double> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double g = rng.normal() * (i == j ? diag_scale : 1.0);
      m[static_cast<std::size_t>(i) * n + j] = g;
      m[static_cast<std::size_t>(j) * n + i] = g;
    }
  return m;
}

std::vector<double> eigenvalues_symmetric(std::span<const double> m, int n) {
  if (n < 1 || n > 400) throw DomainError("matrix size must lie in [1, 400]");
  const auto nn = static_cast<std::size_t>(n);
  if (m.size() != nn * nn) throw ShapeError("matrix has wrong number of entries");
  double amax = 0.0, fro2 = 0.0, trace = 0.0;
  for (double v : m) {
    if (!std::isfinite(v)) throw DomainError("matrix has non-finite entries");
    amax = std::max(amax, std::abs(v));
    fro2 += v * v;
  }
  for (std::size_t i = 0; i < nn; ++i) {
    trace += m[i * nn + i];
    for (std::size_t j = i + 1; j < nn; ++j)
      if (std::abs(m[i * nn + j] - m[j * nn + i]) > 1e-12 * std::max(1.0, amax))
        throw DomainError("matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + ")");
  }

  std::vector<double> a(m.begin(), m.end());
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * nn + j]; };
  const double target = 1e-12 * std::sqrt(fro2);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < nn; ++p)
      for (std::size_t q = p + 1; q < nn; ++q) off += 2.0 * at(p, q) * at(p, q);
    if (std::sqrt(off) <= target) break;
    for (std::size_t p = 0; p + 1 < nn; ++p)
      for (std::size_t q = p + 1; q < nn; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        at(p, p) -= t * apq;
        at(q, q) += t * apq;
        at(p, q) = at(q, p) = 0.0;
        for (std::size_t r = 0; r < nn; ++r) {
          if (r == p || r == q) continue;
          const double g = at(r, p);
          const double h = at(r, q);
          const double np = g - s * (h + g * tau);
          const double nq = h + s * (g - h * tau);
          at(r, p) = at(p, r) = np;
          at(r, q) = at(q, r) = nq;
        }
      }
  }
  std::vector<double> ev(nn);
  for (std::size_t i = 0; i < nn; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
#ifndef NDEBUG
  double s1 = 0.0, s2 = 0.0;
  for (double v : ev) {
    s1 += v;
    s2 += v * v;
  }
  assert(std::abs(s1 - trace) <= 1e-9 * std::max(1.0, std::sqrt(fro2) * n));
  assert(std::abs(s2 - fro2) <= 1e-9 * std::max(1.0, fro2));
#endif
  (void)trace;
  return ev;
}

LinStatResult linear_statistic(const Polynomial& f, std::span<const double> m, int n) {
  require_univariate(f);
  LinStatResult r;
  r.eigenvalues = eigenvalues_symmetric(m, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (double l : r.eigenvalues) {
    const double x = l * scale;
    r.z += f.evaluate(std::span<const double>(&x, 1));
  }
  return r;
}

double semicircle_integral(const Polynomial& g) {
  require_univariate(g);
  if (g.degree() > 20) throw DomainError("semicircle_integral needs degree <= 20");
  double s = 0.0;
  for (const auto& [mono, coef] : g.terms()) {
    const int k = mono.empty() ? 0 : mono.front().second;
    if (k % 2 == 0) s += coef * catalan(k / 2);
  }
  return s;
}

double grid_sup(const Polynomial& g, double K, int points) {
  require_univariate(g);
  if (!(K > 0.0) || points < 2) throw DomainError("grid needs K > 0 and at least two points");
  double best = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = -K + 2.0 * K * i / (points - 1);
    best = std::max(best, std::abs(g.evaluate(std::span<const double>(&x, 1))));
  }
  return best;
}

LinStatBound linstat_tail_bound(const Polynomial& f, int n, double t, double C_L, double K) {
  require_univariate(f);
  if (n < 1) throw DomainError("n must be positive");
  if (!(t > 0.0)) throw DomainError("t must be positive");
  if (!(C_L > 0.0)) throw DomainError("C_L must be positive");
  const Polynomial d1 = f.derivative(0);
  LinStatBound b;
  b.sobolev_term = semicircle_integral(d1 * d1);
  b.second_sup = grid_sup(d1.derivative(0), K);
  const double inf = std::numeric_limits<double>::infinity();
  const double nn = n;
  const double quad_den = b.sobolev_term + std::pow(nn, -2.0 / 3.0) * b.second_sup * b.second_sup;
  const double quad = quad_den > 0.0 ? t * t / quad_den : inf;
  const double lin = b.second_sup > 0.0 ? nn * t / b.second_sup : inf;
  b.exponent = std::min(quad, lin);
  b.tail = std::isinf(b.exponent) ? 0.0 : 2.0 * std::exp(-b.exponent / C_L);
  return b;
}

HoffmanWielandt hoffman_wielandt(std::span<const double> b, std::span<const double> c, int n) {
  const auto lb = eigenvalues_symmetric(b, n);
  const auto lc = eigenvalues_symmetric(c, n);
  HoffmanWielandt h;
  for (int i = 0; i < n; ++i) h.lhs += (lb[i] - lc[i]) * (lb[i] - lc[i]);
  for (std::size_t i = 0; i < b.size(); ++i) h.rhs += (b[i] - c[i]) * (b[i] - c[i]);
  // Rounding in the two eigensolves is far below this slack.
  h.holds = h.lhs <= h.rhs * (1.0 + 1e-10) + 1e-12;
  return h;
}

WignerExperiment wigner_experiment(const Polynomial& f, const WignerSpec& spec,
                                   const std::vector<double>& t_list, const MCConfig& cfg,
                                   double C_L, double K) {
  require_univariate(f);
  if (spec.n < 1 || spec.n > 200) throw DomainError("n must lie in [1, 200]");
  if (cfg.N < 1 || cfg.N > 10000) throw DomainError("replicas must lie in [1, 10000]");
  const Polynomial fp = f.derivative(0);
  const int n = spec.n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const auto rows = sample_rows(
      [&](CounterRng& rng, std::span<double> out) {
        const auto m = sample_wigner(spec, rng);
        const auto ev = eigenvalues_symmetric(m, n);
        double z = 0.0, g = 0.0;
        for (double l : ev) {
          const double x = l * scale;
          const std::span<const double> xs(&x, 1);
          z += f.evaluate(xs);
          const double d = fp.evaluate(xs);
          g += d * d;
        }
        out[0] = z;
        out[1] = g / n;
      },
      2, cfg);

  std::vector<double> z(static_cast<std::size_t>(cfg.N)), g(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    z[j] = rows[2 * j];
    g[j] = rows[2 * j + 1];
  }
  WignerExperiment ex;
  ex.n = n;
  ex.replicas = cfg.N;
  ex.mean_z = mean_and_stderr(z, ex.z_std_error);
  ex.sobolev_empirical = mean_and_stderr(g, ex.sobolev_std_error);
  ex.sobolev_limit = semicircle_integral(fp * fp);
  for (double t : t_list) {
    WignerTailRow r;
    r.t = t;
    r.empirical = tail_of(z, t);
    r.bound = linstat_tail_bound(f, n, t, C_L, K).tail;
    ex.rows.push_back(r);
  }
  return ex;
}

}  // namespace concentro
