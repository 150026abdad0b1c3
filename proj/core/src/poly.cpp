#include "concentro/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "concentro/errors.hpp"

namespace concentro {

namespace {

Monomial normalize(Monomial mono, int nvars) {
  for (const auto& [v, k] : mono) {
    if (v < 0 || v >= nvars)
      throw DomainError("monomial variable " + std::to_string(v + 1) + " outside [1," +
                        std::to_string(nvars) + "]");
    if (k < 0) throw DomainError("monomial powers must be nonnegative");
  }
  std::sort(mono.begin(), mono.end());
  Monomial out;
  for (const auto& [v, k] : mono) {
    if (k == 0) continue;
    if (!out.empty() && out.back().first == v) {
      out.back().second += k;
    } else {
      out.emplace_back(v, k);
    }
  }
  return out;
}

int total_degree(const Monomial& mono) {
  int s = 0;
  for (const auto& [v, k] : mono) s += k;
  return s;
}

double falling(int a, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= a - j;
  return r;
}

double double_factorial(int k) {
  double r = 1.0;
  for (int j = k; j > 1; j -= 2) r *= j;
  return r;
}

// Visits every permutation-distinct arrangement of a sorted index tuple.
template <class F>
void for_each_arrangement(std::vector<int> idx, F&& f) {
  std::sort(idx.begin(), idx.end());
  do {
    f(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
}

}  // namespace

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
  if (nvars < 0) throw DomainError("polynomial needs a nonnegative variable count");
}

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int var) {
  Polynomial p(nvars);
  p.add_term({{var, 1}}, 1.0);
  return p;
}

void Polynomial::add_term(Monomial mono, double coef) {
  if (!std::isfinite(coef)) throw DomainError("polynomial coefficients must be finite");
  mono = normalize(std::move(mono), nvars_);
  if (coef == 0.0) return;
  auto [it, inserted] = terms_.emplace(std::move(mono), coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0.0) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [mono, c] : terms_) d = std::max(d, total_degree(mono));
  return d;
}

double Polynomial::coefficient(const Monomial& mono) const {
  const auto it = terms_.find(normalize(mono, nvars_));
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(nvars_))
    throw ShapeError("point has " + std::to_string(x.size()) + " coordinates, polynomial has " +
                     std::to_string(nvars_) + " variables");
  double s = 0.0;
  for (const auto& [mono, c] : terms_) {
    double t = c;
    for (const auto& [v, k] : mono) {
      double xp = 1.0;
      for (int j = 0; j < k; ++j) xp *= x[v];
      t *= xp;
    }
    s += t;
  }
  return s;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw DomainError("derivative variable out of range");
  Polynomial out(nvars_);
  for (const auto& [mono, c] : terms_) {
    for (std::size_t j = 0; j < mono.size(); ++j) {
      if (mono[j].first != var) continue;
      Monomial m = mono;
      const int k = m[j].second;
      if (--m[j].second == 0) m.erase(m.begin() + static_cast<std::ptrdiff_t>(j));
      out.add_term(std::move(m), c * k);
    }
  }
  return out;
}

bool Polynomial::is_tetrahedral() const {
  for (const auto& [mono, c] : terms_)
    for (const auto& [v, k] : mono)
      if (k > 1) return false;
  return true;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = total_degree(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return total_degree(t.first) == d; });
}

double Polynomial::expectation(const ProductDistribution& dist) const {
  if (dist.n() != nvars_) throw ShapeError("distribution dimension differs from nvars");
  double s = 0.0;
  for (const auto& [mono, c] : terms_) {
    double t = c;
    for (const auto& [v, k] : mono) t *= dist.moment(k);
    s += t;
  }
  return s;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (other.nvars_ != nvars_) throw ShapeError("polynomials have different nvars");
  Polynomial out = *this;
  for (const auto& [mono, c] : other.terms_) out.add_term(mono, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + other * -1.0; }

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (other.nvars_ != nvars_) throw ShapeError("polynomials have different nvars");
  Polynomial out(nvars_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : other.terms_) {
      Monomial m = m1;
      m.insert(m.end(), m2.begin(), m2.end());
      out.add_term(std::move(m), c1 * c2);
    }
  return out;
}

Polynomial Polynomial::operator*(double s) const {
  Polynomial out(nvars_);
  for (const auto& [mono, c] : terms_) out.add_term(mono, c * s);
  return out;
}

std::string to_string(Law law) {
  switch (law) {
    case Law::Gaussian: return "gaussian";
    case Law::Rademacher: return "rademacher";
    case Law::Bernoulli: return "bernoulli";
    case Law::Weibull: return "weibull";
    case Law::MomentTable: return "moments";
  }
  return "unknown";
}

ProductDistribution::ProductDistribution(int n, Law law, double param)
    : n_(n), law_(law), param_(param) {
  if (n < 1) throw DomainError("distribution needs n >= 1");
}

ProductDistribution ProductDistribution::gaussian(int n) {
  ProductDistribution d(n, Law::Gaussian, 0.0);
  d.sobolev_ = SobolevPair{1.0, 0.5};
  return d;
}

ProductDistribution ProductDistribution::rademacher(int n) {
  return ProductDistribution(n, Law::Rademacher, 0.0);
}

ProductDistribution ProductDistribution::bernoulli(int n, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("bernoulli p must lie in (0,1]");
  return ProductDistribution(n, Law::Bernoulli, p);
}

ProductDistribution ProductDistribution::weibull(int n, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("weibull alpha must be positive");
  return ProductDistribution(n, Law::Weibull, alpha);
}

ProductDistribution ProductDistribution::from_moments(int n, std::vector<double> moments,
                                                      std::optional<double> psi2) {
  if (moments.empty() || moments[0] != 1.0)
    throw DomainError("moment table must start with E X^0 = 1");
  for (double m : moments)
    if (!std::isfinite(m)) throw DomainError("moment table entries must be finite");
  if (psi2 && !(*psi2 > 0.0)) throw DomainError("psi2 must be positive");
  ProductDistribution d(n, Law::MomentTable, 0.0);
  d.table_ = std::move(moments);
  d.psi2_ = psi2;
  return d;
}

double ProductDistribution::alpha() const {
  if (law_ == Law::Weibull) return param_;
  if (law_ == Law::Gaussian) return 2.0;
  throw DomainError("law " + to_string(law_) + " has no Weibull exponent");
}

double ProductDistribution::moment(int k) const {
  if (k < 0) throw DomainError("negative moment order");
  if (k == 0) return 1.0;
  switch (law_) {
    case Law::Gaussian: return k % 2 ? 0.0 : double_factorial(k - 1);
    case Law::Rademacher: return k % 2 ? 0.0 : 1.0;
    case Law::Bernoulli: return param_;
    case Law::Weibull: return k % 2 ? 0.0 : std::tgamma(1.0 + k / param_);
    case Law::MomentTable:
      if (static_cast<std::size_t>(k) >= table_.size())
        throw DomainError("moment " + std::to_string(k) + " not in the supplied table (max " +
                          std::to_string(table_.size() - 1) + ")");
      return table_[k];
  }
  return 0.0;
}

double ProductDistribution::psi2() const {
  switch (law_) {
    case Law::Gaussian: return std::sqrt(8.0 / 3.0);
    case Law::Rademacher: return 1.0 / std::sqrt(std::log(2.0));
    case Law::Bernoulli: return std::sqrt(2.0) / std::sqrt(std::log(2.0 / param_));
    case Law::Weibull:
      if (param_ >= 2.0) return std::sqrt(2.0);
      return std::numeric_limits<double>::infinity();
    case Law::MomentTable:
      return psi2_ ? *psi2_ : std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

ProductDistribution ProductDistribution::with_sobolev(SobolevPair s) const {
  if (!(s.L > 0.0) || !(s.gamma >= 0.5)) throw DomainError("sobolev pair needs L > 0, gamma >= 1/2");
  ProductDistribution d = *this;
  d.sobolev_ = s;
  return d;
}

ProductDistribution ProductDistribution::with_n(int n) const {
  if (n < 1) throw DomainError("distribution needs n >= 1");
  ProductDistribution d = *this;
  d.n_ = n;
  return d;
}

double ProductDistribution::draw(CounterRng& rng) const {
  switch (law_) {
    case Law::Gaussian: return rng.normal();
    case Law::Rademacher: return rng.sign();
    case Law::Bernoulli: return rng.uniform() < param_ ? 1.0 : 0.0;
    case Law::Weibull: {
      const double mag = std::pow(-std::log(rng.uniform()), 1.0 / param_);
      return rng.sign() * mag;
    }
    case Law::MomentTable: throw Unsupported("cannot sample a law given only by moments");
  }
  return 0.0;
}

std::string ProductDistribution::describe() const {
  std::ostringstream os;
  os << to_string(law_);
  if (law_ == Law::Bernoulli) os << "(p=" << param_ << ")";
  if (law_ == Law::Weibull) os << "(alpha=" << param_ << ")";
  os << " n=" << n_;
  return os.str();
}

Tensor expected_derivative_tensor(const Polynomial& f, const ProductDistribution& dist, int d) {
  if (d < 1) throw DomainError("derivative order must be at least 1");
  if (dist.n() != f.nvars())
    throw ShapeError("distribution has n=" + std::to_string(dist.n()) + ", polynomial has " +
                     std::to_string(f.nvars()) + " variables");
  const int n = f.nvars();
  std::vector<double> vals(Tensor(d, n).size(), 0.0);
  if (d > f.degree()) return Tensor(d, n, std::move(vals));

  std::vector<int> counts;
  for (const auto& [mono, c] : f.terms()) {
    if (total_degree(mono) < d) continue;
    const std::size_t nv = mono.size();
    counts.assign(nv, 0);
    // Odometer over derivative counts 0 ≤ k_v ≤ a_v with Σ k_v = d.
    while (true) {
      int sum = std::accumulate(counts.begin(), counts.end(), 0);
      if (sum == d) {
        double w = c;
        std::vector<int> idx;
        for (std::size_t j = 0; j < nv && w != 0.0; ++j) {
          const int a = mono[j].second, k = counts[j];
          w *= falling(a, k) * dist.moment(a - k);
          idx.insert(idx.end(), static_cast<std::size_t>(k), mono[j].first);
        }
        if (w != 0.0)
          for_each_arrangement(std::move(idx), [&](const std::vector<int>& ix) {
            std::size_t off = 0;
            for (int i : ix) off = off * n + i;
            vals[off] += w;
          });
      }
      std::size_t j = 0;
      while (j < nv && ++counts[j] > mono[j].second) counts[j++] = 0;
      if (j == nv) break;
    }
  }
  return Tensor(d, n, std::move(vals));
}

HermiteCoeffs hermite(int k) {
  if (k < 0 || k > 12) throw DomainError("hermite degree must lie in [0,12]");
  std::vector<long long> prev{1}, cur{1};
  if (k >= 1) cur = {0, 1};
  for (int j = 1; j < k; ++j) {
    // h_{j+1} = x h_j - j h_{j-1}
    std::vector<long long> next(static_cast<std::size_t>(j) + 2, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= j * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {k, cur};
}

double hermite_value(int k, double x) {
  if (k < 0) throw DomainError("hermite degree must be nonnegative");
  if (k == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int j = 1; j < k; ++j) {
    const double next = x * cur - j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Polynomial hermite_polynomial(int k, int nvars, int var) {
  const HermiteCoeffs h = hermite(k);
  Polynomial p(nvars);
  for (std::size_t j = 0; j < h.coeffs.size(); ++j)
    if (h.coeffs[j] != 0) p.add_term({{var, static_cast<int>(j)}}, static_cast<double>(h.coeffs[j]));
  return p;
}

HermiteExpansion hermite_expansion(const Polynomial& f) {
  if (f.degree() > 6) throw DomainError("hermite_expansion supports degree <= 6");
  if (f.nvars() > 12) throw DomainError("hermite_expansion supports at most 12 variables");
  const int n = f.nvars();
  // x^a = Σ_k a!/(k!(a-2k)!2^k) h_{a-2k}
  auto fact = [](int m) {
    double r = 1.0;
    for (int j = 2; j <= m; ++j) r *= j;
    return r;
  };
  HermiteExpansion out;
  for (const auto& [mono, c] : f.terms()) {
    std::vector<std::pair<std::vector<int>, double>> partial{{std::vector<int>(n, 0), c}};
    for (const auto& [v, a] : mono) {
      std::vector<std::pair<std::vector<int>, double>> next;
      for (const auto& [deg, w] : partial)
        for (int k = 0; 2 * k <= a; ++k) {
          auto d2 = deg;
          d2[v] = a - 2 * k;
          next.emplace_back(std::move(d2), w * fact(a) / (fact(k) * fact(a - 2 * k) * std::ldexp(1.0, k)));
        }
      partial = std::move(next);
    }
    for (auto& [deg, w] : partial) out[deg] += w;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0.0; });
  return out;
}

Polynomial from_hermite_expansion(const HermiteExpansion& expansion, int nvars) {
  Polynomial out(nvars);
  for (const auto& [deg, a] : expansion) {
    if (deg.size() != static_cast<std::size_t>(nvars))
      throw ShapeError("hermite multi-degree has wrong length");
    Polynomial term = Polynomial::constant(nvars, a);
    for (int v = 0; v < nvars; ++v)
      if (deg[v] > 0) term = term * hermite_polynomial(deg[v], nvars, v);
    out = out + term;
  }
  return out;
}

}  // namespace concentro
