#include "concentro/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "concentro/errors.hpp"

namespace concentro {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void require_p(double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw DomainError("p=" + num(p) + " must be >= 2");
}

double sum_terms(const std::vector<BoundTerm>& terms) {
  double s = 0.0;
  for (const auto& t : terms) s += t.value;
  return s;
}

}  // namespace

bool BoundReport::has_lower_bound_terms() const {
  return std::any_of(terms.begin(), terms.end(), [](const BoundTerm& t) { return t.lower_bound; });
}

DerivativeNorms::DerivativeNorms(const Polynomial& f, const ProductDistribution& dist,
                                 const NormOptions& opts)
    : degree_(f.degree()), law_(dist.describe()) {
  if (degree_ > 6) throw DomainError("polynomial degree " + std::to_string(degree_) + " exceeds 6");
  for (int d = 1; d <= degree_; ++d) {
    tensors_.push_back(expected_derivative_tensor(f, dist, d));
    for (const auto& part : enumerate_partitions(d))
      entries_.push_back({d, part, norm_J(tensors_.back(), part, opts)});
  }
}

BoundReport sobolev_moment_bound(const DerivativeNorms& norms, double p, double L, double gamma) {
  require_p(p);
  if (!(gamma >= 0.5)) throw DomainError("gamma=" + num(gamma) + " must be >= 1/2");
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("L must be positive and finite");
  BoundReport r;
  r.kind = "moment";
  for (const auto& e : norms.entries()) {
    if (e.norm.value == 0.0) continue;
    BoundTerm t;
    t.d = e.d;
    t.partition = e.partition.to_string();
    t.exponent = (gamma - 0.5) * e.d + 0.5 * static_cast<double>(e.partition.size());
    t.l_power = e.d;
    t.norm = e.norm.value;
    t.lower_bound = e.norm.lower_bound();
    t.value = std::pow(L, e.d) * std::pow(p, t.exponent) * t.norm;
    r.terms.push_back(std::move(t));
  }
  r.total = sum_terms(r.terms);
  r.meta = {{"p", num(p)}, {"L", num(L)}, {"gamma", num(gamma)}, {"law", norms.law()}};
  return r;
}

BoundReport sobolev_moment_bound(const Polynomial& f, const ProductDistribution& dist, double p,
                                 double L, double gamma, const NormOptions& opts) {
  require_p(p);
  if (!(gamma >= 0.5)) throw DomainError("gamma=" + num(gamma) + " must be >= 1/2");
  return sobolev_moment_bound(DerivativeNorms(f, dist, opts), p, L, gamma);
}

BoundReport gaussian_moment_bound(const DerivativeNorms& norms, double p) {
  BoundReport r = sobolev_moment_bound(norms, p, 1.0, 0.5);
  for (auto& t : r.terms) t.l_power = 0;
  r.meta = {{"p", num(p)}, {"law", norms.law()}};
  return r;
}

BoundReport gaussian_moment_bound(const Polynomial& f, const ProductDistribution& dist, double p,
                                  const NormOptions& opts) {
  require_p(p);
  return gaussian_moment_bound(DerivativeNorms(f, dist, opts), p);
}

BoundReport subgaussian_moment_bound(const DerivativeNorms& norms, double p, double L) {
  return sobolev_moment_bound(norms, p, L, 0.5);
}

BoundReport eta_tail(const DerivativeNorms& norms, double t, double L, double C, double gamma) {
  if (!(t > 0.0)) throw DomainError("t must be positive");
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("L must be positive and finite");
  if (!(C > 0.0)) throw DomainError("C must be positive");
  if (!(gamma >= 0.5)) throw DomainError("gamma must be >= 1/2");
  BoundReport r;
  r.kind = "eta";
  r.total = std::numeric_limits<double>::infinity();
  for (const auto& e : norms.entries()) {
    if (e.norm.value == 0.0) continue;
    BoundTerm term;
    term.d = e.d;
    term.partition = e.partition.to_string();
    term.exponent = 2.0 / ((2.0 * gamma - 1.0) * e.d + static_cast<double>(e.partition.size()));
    term.l_power = e.d;
    term.norm = e.norm.value;
    term.lower_bound = e.norm.lower_bound();
    term.value = std::pow(t / (std::pow(L, e.d) * term.norm), term.exponent);
    r.total = std::min(r.total, term.value);
    r.terms.push_back(std::move(term));
  }
  if (r.terms.empty())
    throw DomainError("degenerate polynomial: every derivative norm is zero");
  r.tail = 2.0 * std::exp(-r.total / C);
  r.meta = {{"t", num(t)}, {"L", num(L)}, {"C", num(C)}, {"gamma", num(gamma)},
            {"law", norms.law()}};
  return r;
}

BoundReport eta_tail(const Polynomial& f, const ProductDistribution& dist, double t, double L,
                     double C, const NormOptions& opts) {
  return eta_tail(DerivativeNorms(f, dist, opts), t, L, C);
}

double additive_functional_tail(std::span<const double> lower, double top_sup, long n, double L,
                                double t, double C) {
  if (n < 1) throw DomainError("n must be positive");
  if (!(t > 0.0)) throw DomainError("t must be positive");
  if (!(L > 0.0) || !(C > 0.0)) throw DomainError("L and C must be positive");
  if (!(top_sup >= 0.0)) throw DomainError("sup norm of the top derivative must be nonnegative");
  const int D = static_cast<int>(lower.size()) + 1;
  const double inf = std::numeric_limits<double>::infinity();
  const double nn = static_cast<double>(n);

  auto expterm = [C](double e) { return std::isinf(e) ? 0.0 : 2.0 * std::exp(-e / C); };

  double e1 = inf;
  if (top_sup > 0.0)
    e1 = std::min(t * t / (std::pow(L, 2 * D) * nn * top_sup * top_sup),
                  std::pow(t, 2.0 / D) / (L * L * std::pow(top_sup, 2.0 / D)));
  double e2 = inf, e3 = inf;
  for (int d = 1; d <= D - 1; ++d) {
    const double m = std::abs(lower[d - 1]);
    if (m == 0.0) continue;
    e2 = std::min(e2, t * t / (std::pow(L, 2 * d) * nn * m * m));
    if (d >= 2) e3 = std::min(e3, std::pow(t, 2.0 / d) / (L * L * std::pow(m, 2.0 / d)));
  }
  return std::min(2.0, expterm(e1) + expterm(e2) + expterm(e3));
}

BoundReport weibull_moment_bound(const Polynomial& f, const ProductDistribution& dist, double p,
                                 double alpha, const NormOptions& opts) {
  require_p(p);
  if (!(alpha >= 1.0 && alpha <= 2.0)) throw DomainError("alpha=" + num(alpha) + " outside [1,2]");
  const int D = f.degree();
  if (D > 3) throw Unsupported("weibull_moment_bound needs degree <= 3, got " + std::to_string(D));
  BoundReport r;
  r.kind = "weibull-moment";
  for (int d = 1; d <= D; ++d) {
    const Tensor a = expected_derivative_tensor(f, dist, d);
    for (const auto& split : enumerate_splits(d)) {
      const double norm = mixed_norm(a, split, alpha, opts);
      if (norm == 0.0) continue;
      BoundTerm t;
      t.d = d;
      t.partition = split.to_string();
      t.exponent = 0.5 * static_cast<double>(split.inner.size()) +
                   static_cast<double>(split.outer.size()) / alpha;
      t.norm = norm;
      const std::size_t blocks = split.merged().size();
      t.lower_bound = blocks >= 3 || (blocks == 2 && !split.outer.empty());
      t.value = std::pow(p, t.exponent) * norm;
      r.terms.push_back(std::move(t));
    }
  }
  r.total = sum_terms(r.terms);
  r.meta = {{"p", num(p)}, {"alpha", num(alpha)}, {"law", dist.describe()}};
  return r;
}

}  // namespace concentro
