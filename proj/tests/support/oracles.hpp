#pragma once

// Independent reference computations for the tests. Nothing here calls the
// routine it is used to check.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "concentro/partitions.hpp"
#include "concentro/tensor.hpp"

namespace oracle {

inline long bell(int d) {
  // Bell triangle.
  std::vector<long> row{1};
  for (int i = 1; i < d; ++i) {
    std::vector<long> next{row.back()};
    for (long v : row) next.push_back(next.back() + v);
    row = next;
  }
  return row.back();
}

inline double falling(int n, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= n - j;
  return r;
}

inline double factorial(int k) { return falling(k, k); }

inline double binomial(int n, int k) { return falling(n, k) / factorial(k); }

inline double catalan(int k) { return binomial(2 * k, k) / (k + 1); }

/// E g^k for a standard normal.
inline double gaussian_moment(int k) {
  if (k % 2) return 0.0;
  double r = 1.0;
  for (int j = k - 1; j > 0; j -= 2) r *= j;
  return r;
}

/// Coefficients of the probabilists' Hermite polynomial from the explicit sum
/// h_k(x) = k! Σ_m (-1)^m x^{k-2m} / (m! (k-2m)! 2^m).
inline std::vector<double> hermite_explicit(int k) {
  std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
  for (int m = 0; 2 * m <= k; ++m)
    c[k - 2 * m] = (m % 2 ? -1.0 : 1.0) * factorial(k) /
                   (factorial(m) * factorial(k - 2 * m) * std::pow(2.0, m));
  return c;
}

inline double normal_upper_tail(double t) { return 0.5 * std::erfc(t / std::sqrt(2.0)); }

/// Matricization by direct index arithmetic (rows: block 0, columns: block 1).
inline Eigen::MatrixXd matricize(const concentro::Tensor& a, const concentro::SetPartition& part) {
  const int d = a.order(), m = a.dim();
  const auto& r = part[0];
  const auto& c = part[1];
  const int rows = static_cast<int>(std::pow(m, r.size()));
  const int cols = static_cast<int>(std::pow(m, c.size()));
  Eigen::MatrixXd out(rows, cols);
  std::vector<int> idx(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < a.size(); ++flat) {
    std::size_t rem = flat;
    for (int k = d - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % m);
      rem /= m;
    }
    int ri = 0, ci = 0;
    for (int p : r) ri = ri * m + idx[p - 1];
    for (int p : c) ci = ci * m + idx[p - 1];
    out(ri, ci) = a.values()[flat];
  }
  return out;
}

/// Largest singular value by SVD.
inline double spectral(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

/// Multilinear form by explicit enumeration of every index tuple.
inline double form(const concentro::Tensor& a, const concentro::SetPartition& part,
                   const std::vector<std::vector<double>>& x) {
  const int d = a.order(), m = a.dim();
  std::vector<int> idx(static_cast<std::size_t>(d));
  double s = 0.0;
  for (std::size_t flat = 0; flat < a.size(); ++flat) {
    std::size_t rem = flat;
    for (int k = d - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % m);
      rem /= m;
    }
    double prod = a.values()[flat];
    for (std::size_t l = 0; l < part.size(); ++l) {
      int pos = 0;
      for (int p : part[l]) pos = pos * m + idx[p - 1];
      prod *= x[l][pos];
    }
    s += prod;
  }
  return s;
}

inline concentro::Tensor random_tensor(int order, int dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(static_cast<std::size_t>(std::pow(dim, order)));
  for (auto& x : v) x = g(gen);
  return concentro::Tensor(order, dim, std::move(v));
}

/// Symmetric tensor vanishing on every generalized diagonal.
inline concentro::Tensor random_tetrahedral(int order, int dim, std::uint64_t seed) {
  const concentro::Tensor s = random_tensor(order, dim, seed).symmetrized();
  std::vector<double> v(s.values().begin(), s.values().end());
  std::vector<int> idx(static_cast<std::size_t>(order));
  for (std::size_t flat = 0; flat < v.size(); ++flat) {
    s.unravel(flat, idx);
    for (int i = 0; i < order; ++i)
      for (int j = i + 1; j < order; ++j)
        if (idx[i] == idx[j]) v[flat] = 0.0;
  }
  return concentro::Tensor(order, dim, std::move(v));
}

inline std::vector<double> random_unit(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) {
    x = g(gen);
    s += x * x;
  }
  for (auto& x : v) x /= std::sqrt(s);
  return v;
}

/// Triangles of a 0/1 adjacency matrix by a triple loop.
inline long triangles(const Eigen::MatrixXd& a) {
  long c = 0;
  const int n = static_cast<int>(a.rows());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) c += a(i, j) != 0 && a(j, k) != 0 && a(i, k) != 0;
  return c;
}

/// Same count from edge indicators listed in lexicographic pair order.
inline long triangles(const std::vector<double>& edges, int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  std::size_t e = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++e) a(i, j) = a(j, i) = edges.at(e);
  return triangles(a);
}

}  // namespace oracle
