#ifndef LAPSPREAD_SPECTRAL_HPP
#define LAPSPREAD_SPECTRAL_HPP

/// \file spectral.hpp
/// \brief Laplacian matrices, a cyclic Jacobi eigensolver and the Laplacian
///        eigenvalue identities used for complement/spread checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lapspread/graph.hpp"

namespace lapspread {

class SpectralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense real symmetric matrix; set() writes both triangles so symmetry is
/// exact.
class SymMatrix {
 public:
  explicit SymMatrix(int n = 0)
      : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

  int order() const { return n_; }
  double operator()(int i, int j) const { return a_[idx(i, j)]; }

  void set(int i, int j, double value) {
    a_[idx(i, j)] = value;
    a_[idx(j, i)] = value;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
  }

  double off_diagonal_norm() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (i != j) s += (*this)(i, j) * (*this)(i, j);
      }
    }
    return std::sqrt(s);
  }

  double trace() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_;
  std::vector<double> a_;
};

struct Spectrum {
  std::vector<double> values;  // ascending
  double residual = 0.0;       // off-diagonal Frobenius norm at exit
};

/// Eigenpairs; vectors[k] is the unit eigenvector of values[k].
struct EigenDecomposition {
  Spectrum spectrum;
  std::vector<std::vector<double>> vectors;
};

inline constexpr double kJacobiRelativeTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;
/// Eigenvalues below this count as zero when counting components.
inline constexpr double kZeroEigenvalueThreshold = 1e-6;

inline SymMatrix adjacency_matrix(const Graph& g) {
  SymMatrix m(g.order());
  for (auto [a, b] : g.edges()) m.set(a, b, 1.0);
  return m;
}

/// L(G) = D(G) - A(G).
inline SymMatrix laplacian(const Graph& g) {
  SymMatrix m(g.order());
  for (Vertex v = 0; v < g.order(); ++v) m.set(v, v, static_cast<double>(g.degree(v)));
  for (auto [a, b] : g.edges()) m.set(a, b, -1.0);
  return m;
}

namespace detail {

inline EigenDecomposition jacobi(SymMatrix a, bool want_vectors) {
  const int n = a.order();
  std::vector<double> v;
  if (want_vectors) {
    v.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i * n + i)] = 1.0;
  }
  auto vat = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i * n + j)]; };

  const double target = kJacobiRelativeTolerance * (1.0 + a.frobenius_norm());
  int sweeps = 0;
  while (a.off_diagonal_norm() >= target) {
    if (++sweeps > kJacobiMaxSweeps) {
      throw SpectralError("Jacobi eigensolver did not converge within " +
                          std::to_string(kJacobiMaxSweeps) + " sweeps");
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a.set(k, p, c * akp - s * akq);
          a.set(k, q, s * akp + c * akq);
        }
        a.set(p, p, a(p, p) - t * apq);
        a.set(q, q, a(q, q) + t * apq);
        a.set(p, q, 0.0);

        if (want_vectors) {
          for (int k = 0; k < n; ++k) {
            const double vkp = vat(k, p);
            const double vkq = vat(k, q);
            vat(k, p) = c * vkp - s * vkq;
            vat(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });

  EigenDecomposition out;
  out.spectrum.residual = a.off_diagonal_norm();
  for (int k : order) {
    out.spectrum.values.push_back(a(k, k));
    if (want_vectors) {
      std::vector<double> col(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = vat(i, k);
      out.vectors.push_back(std::move(col));
    }
  }
  return out;
}

}  // namespace detail

/// Eigenvalues by cyclic Jacobi rotations, iterated until the off-diagonal
/// Frobenius norm drops below 1e-12 * (1 + ||M||_F).
inline Spectrum eigenvalues_sym(const SymMatrix& m) { return detail::jacobi(m, false).spectrum; }

inline EigenDecomposition eigen_decompose(const SymMatrix& m) { return detail::jacobi(m, true); }

inline Spectrum laplacian_spectrum(const Graph& g) { return eigenvalues_sym(laplacian(g)); }

inline double lambda2(const Spectrum& s) {
  if (s.values.size() < 2) throw SpectralError("lambda2 requires n >= 2");
  return s.values[1];
}

/// Algebraic connectivity.
inline double lambda2(const Graph& g) {
  if (g.order() < 2) throw SpectralError("lambda2 requires n >= 2");
  return lambda2(laplacian_spectrum(g));
}

/// Laplacian spread lambda_n - lambda_2.
inline double spread(const Graph& g) {
  if (g.order() < 2) throw SpectralError("spread requires n >= 2");
  Spectrum s = laplacian_spectrum(g);
  return s.values.back() - s.values[1];
}

inline int zero_multiplicity(const Spectrum& s, double threshold = kZeroEigenvalueThreshold) {
  return static_cast<int>(
      std::count_if(s.values.begin(), s.values.end(), [&](double x) { return std::abs(x) < threshold; }));
}

struct ComplementSpectrumReport {
  std::vector<double> graph;       // spectrum of G
  std::vector<double> complement;  // spectrum of the complement
  std::vector<double> predicted;   // {0} and n - lambda_k(G), k = n..2
  double max_deviation = 0.0;
  bool ok = false;
};

inline constexpr double kComplementIdentityTolerance = 1e-8;

/// Compares the complement's Laplacian spectrum with the one predicted from
/// G's spectrum.
inline ComplementSpectrumReport complement_spectrum_check(const Graph& g) {
  if (g.order() < 2) throw SpectralError("complement spectrum check requires n >= 2");
  ComplementSpectrumReport r;
  r.graph = laplacian_spectrum(g).values;
  r.complement = laplacian_spectrum(complement(g)).values;
  const double n = static_cast<double>(g.order());
  r.predicted.push_back(0.0);
  for (std::size_t k = r.graph.size() - 1; k >= 1; --k) r.predicted.push_back(n - r.graph[k]);
  std::sort(r.predicted.begin(), r.predicted.end());
  for (std::size_t k = 0; k < r.predicted.size(); ++k) {
    r.max_deviation = std::max(r.max_deviation, std::abs(r.predicted[k] - r.complement[k]));
  }
  r.ok = r.max_deviation <= kComplementIdentityTolerance;
  return r;
}

struct NormIdentityReport {
  double norm_squared = 0.0;
  double pair_sum = 0.0;        // sum over unordered pairs of (f(x) - f(y))^2
  double pair_sum_over_n = 0.0;
  double relative_error = 0.0;
  bool ok = false;
};

inline constexpr double kNormIdentityTolerance = 1e-10;

/// For f orthogonal to the all-ones vector, ||f||^2 equals
/// (1/n) * sum over unordered pairs of (f(x) - f(y))^2.
/// Throws SpectralError when sum(f) is not zero (|sum| > 1e-12 * max(1, sum |f|)).
inline NormIdentityReport rayleigh_norm_identity_check(std::span<const double> f) {
  const std::size_t n = f.size();
  if (n == 0) throw SpectralError("norm identity needs a nonempty vector");
  double sum = 0.0;
  double abs_sum = 0.0;
  for (double x : f) {
    sum += x;
    abs_sum += std::abs(x);
  }
  if (std::abs(sum) > 1e-12 * std::max(1.0, abs_sum)) {
    throw SpectralError("norm identity requires a vector orthogonal to the all-ones vector");
  }

  NormIdentityReport r;
  for (double x : f) r.norm_squared += x * x;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = f[i] - f[j];
      r.pair_sum += d * d;
    }
  }
  r.pair_sum_over_n = r.pair_sum / static_cast<double>(n);
  const double scale = std::max(r.norm_squared, 1e-300);
  r.relative_error = std::abs(r.norm_squared - r.pair_sum_over_n) / scale;
  r.ok = r.norm_squared == r.pair_sum_over_n || r.relative_error <= kNormIdentityTolerance;
  return r;
}

}  // namespace lapspread

#endif  // LAPSPREAD_SPECTRAL_HPP
