#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "concentro/norms.hpp"
#include "concentro/poly.hpp"

namespace concentro {

struct BoundTerm {
  int d = 0;
  std::string partition;  // "1,2|3", or "1||2,3" for split terms
  double exponent = 0.0;  // power of p, or of the ratio inside η
  int l_power = 0;        // power of L
  double norm = 0.0;
  bool lower_bound = false;  // norm came from alternating maximization
  double value = 0.0;
};

struct BoundReport {
  std::string kind;
  std::vector<BoundTerm> terms;
  /// Sum of term values for moment bounds, min for η functionals.
  double total = 0.0;
  /// 2·exp(-η/C) for η functionals; unused otherwise.
  double tail = 0.0;
  std::vector<std::pair<std::string, std::string>> meta;

  bool has_lower_bound_terms() const;
};

/// ‖E D^d f(X)‖_J for every d ≤ deg f and every partition J of [d],
/// computed once and shared between bound evaluations.
class DerivativeNorms {
 public:
  struct Entry {
    int d;
    SetPartition partition;
    NormResult norm;
  };

  DerivativeNorms(const Polynomial& f, const ProductDistribution& dist,
                  const NormOptions& opts = {});

  int degree() const { return degree_; }
  const std::vector<Entry>& entries() const { return entries_; }
  const Tensor& derivative(int d) const { return tensors_.at(static_cast<std::size_t>(d - 1)); }
  const std::string& law() const { return law_; }

 private:
  int degree_;
  std::string law_;
  std::vector<Tensor> tensors_;
  std::vector<Entry> entries_;
};

/// Σ_d Σ_J L^d p^{(γ-1/2)d + #J/2} ‖E D^d f‖_J.
BoundReport sobolev_moment_bound(const DerivativeNorms& norms, double p, double L, double gamma);
BoundReport sobolev_moment_bound(const Polynomial& f, const ProductDistribution& dist, double p,
                                 double L, double gamma, const NormOptions& opts = {});

/// Σ_d Σ_J p^{#J/2} ‖E D^d f‖_J.
BoundReport gaussian_moment_bound(const DerivativeNorms& norms, double p);
BoundReport gaussian_moment_bound(const Polynomial& f, const ProductDistribution& dist, double p,
                                  const NormOptions& opts = {});

/// Sub-Gaussian form: Σ_d L^d Σ_J p^{#J/2} ‖E D^d f‖_J with L the ψ2 bound.
BoundReport subgaussian_moment_bound(const DerivativeNorms& norms, double p, double L);

/// η_f(t) = min_{d,J} (t / (L^d ‖E D^d f‖_J))^{2/((2γ-1)d + #J)}, zero norms
/// skipped, plus the tail estimate 2·exp(-η/C).
BoundReport eta_tail(const DerivativeNorms& norms, double t, double L, double C = 1.0,
                     double gamma = 0.5);
BoundReport eta_tail(const Polynomial& f, const ProductDistribution& dist, double t, double L,
                     double C = 1.0, const NormOptions& opts = {});

/// Tail of Z = Σ_i f(X_i) for i.i.d. X_i. lower[d-1] = E f^{(d)}(X_1) for
/// d = 1..D-1 (so D = lower.size() + 1); top_sup = ‖f^{(D)}‖_∞. Returns the
/// sum of the three exponential terms with a single constant C, capped at 2.
double additive_functional_tail(std::span<const double> lower, double top_sup, long n, double L,
                                double t, double C = 1.0);

/// m(p, f) = Σ_d m_d(p, E D^d f) with m_d summing p^{#J/2 + #K/α} ‖A‖_{J|K}
/// over all split triples. Degree ≤ 3.
BoundReport weibull_moment_bound(const Polynomial& f, const ProductDistribution& dist, double p,
                                 double alpha, const NormOptions& opts = {});

}  // namespace concentro
