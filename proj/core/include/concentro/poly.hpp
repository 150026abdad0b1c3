#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "concentro/rng.hpp"
#include "concentro/tensor.hpp"

namespace concentro {

/// Sparse exponent vector: (variable, power) pairs, variables 0-based and
/// strictly increasing, powers ≥ 1. The empty monomial is the constant 1.
using Monomial = std::vector<std::pair<int, int>>;

class ProductDistribution;

class Polynomial {
 public:
  explicit Polynomial(int nvars = 0);

  static Polynomial constant(int nvars, double c);
  /// The coordinate function x_var (0-based).
  static Polynomial variable(int nvars, int var);

  /// Adds coef·monomial. The monomial may list variables in any order and
  /// repeat them; it is normalized first. Zero results are erased.
  void add_term(Monomial mono, double coef);

  int nvars() const { return nvars_; }
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, double>& terms() const { return terms_; }
  double coefficient(const Monomial& mono) const;

  double evaluate(std::span<const double> x) const;
  Polynomial derivative(int var) const;
  /// Every variable appears with power at most one.
  bool is_tetrahedral() const;
  bool is_homogeneous() const;
  /// E f(X) under the product law.
  double expectation(const ProductDistribution& dist) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double s) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  int nvars_;
  std::map<Monomial, double> terms_;
};

enum class Law { Gaussian, Rademacher, Bernoulli, Weibull, MomentTable };

std::string to_string(Law law);

struct SobolevPair {
  double L = 1.0;
  double gamma = 0.5;
};

/// n i.i.d. coordinates with a common law.
class ProductDistribution {
 public:
  static ProductDistribution gaussian(int n);
  static ProductDistribution rademacher(int n);
  /// Raw {0,1}-valued coordinates with P(X=1) = p.
  static ProductDistribution bernoulli(int n, double p);
  /// Symmetric with P(|Y| ≥ t) = exp(-t^alpha).
  static ProductDistribution weibull(int n, double alpha);
  /// User law given by E X^k for k = 0..K (moments[0] must be 1). Cannot be
  /// sampled; psi2 is required for tail bounds and may be supplied here.
  static ProductDistribution from_moments(int n, std::vector<double> moments,
                                          std::optional<double> psi2 = std::nullopt);

  int n() const { return n_; }
  Law law() const { return law_; }
  double p() const { return param_; }
  double alpha() const;

  /// E X^k. Throws DomainError past the end of a moment table.
  double moment(int k) const;
  double mean() const { return moment(1); }
  /// ψ2 bound for one coordinate; +inf when the law is not sub-Gaussian.
  double psi2() const;
  /// Sobolev pair (L, γ): the Gaussian default or an explicitly supplied one.
  std::optional<SobolevPair> sobolev() const { return sobolev_; }
  ProductDistribution with_sobolev(SobolevPair s) const;
  ProductDistribution with_n(int n) const;

  double draw(CounterRng& rng) const;

  std::string describe() const;

 private:
  ProductDistribution(int n, Law law, double param);

  int n_;
  Law law_;
  double param_;
  std::vector<double> table_;
  std::optional<double> psi2_;
  std::optional<SobolevPair> sobolev_;
};

/// Symmetric order-d tensor with entries E ∂_{i1}...∂_{id} f(X). Zero when
/// d exceeds the degree.
Tensor expected_derivative_tensor(const Polynomial& f, const ProductDistribution& dist, int d);

/// Probabilists' Hermite polynomial h_k; coeffs[j] multiplies x^j.
struct HermiteCoeffs {
  int degree = 0;
  std::vector<long long> coeffs;
};

HermiteCoeffs hermite(int k);
/// h_k(x) by the three-term recurrence.
double hermite_value(int k, double x);
/// h_k in variable `var` of an nvars-variable polynomial.
Polynomial hermite_polynomial(int k, int nvars = 1, int var = 0);

/// Coefficients a_deg with f = Σ a_deg Π_i h_{deg_i}(x_i); deg has length nvars.
using HermiteExpansion = std::map<std::vector<int>, double>;

HermiteExpansion hermite_expansion(const Polynomial& f);
Polynomial from_hermite_expansion(const HermiteExpansion& expansion, int nvars);

}  // namespace concentro
