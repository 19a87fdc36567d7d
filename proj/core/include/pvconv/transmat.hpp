#pragma once

#include <span>
#include <string>
#include <vector>

#include "pvconv/iset.hpp"

namespace pvconv {

/// Dense row-major matrix over an exact (Rat) or floating (double) scalar.
template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, T(0)) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  T& operator()(int r, int c) { return a[size_t(r) * cols + c]; }
  const T& operator()(int r, int c) const { return a[size_t(r) * cols + c]; }

  bool operator==(const Mat&) const = default;
};

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
  if (x.cols != y.rows) throw UsageError("matrix dimension mismatch");
  Mat<T> z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const T& v = x(i, k);
      if (v == T(0)) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
    }
  return z;
}

template <class T>
Mat<T> operator+(const Mat<T>& x, const Mat<T>& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw UsageError("matrix dimension mismatch");
  Mat<T> z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

template <class T>
std::vector<T> row_times(const std::vector<T>& u, const Mat<T>& m) {
  if (int(u.size()) != m.rows) throw UsageError("row/matrix mismatch");
  std::vector<T> v(m.cols, T(0));
  for (int i = 0; i < m.rows; ++i) {
    if (u[i] == T(0)) continue;
    for (int j = 0; j < m.cols; ++j) v[j] += u[i] * m(i, j);
  }
  return v;
}

template <class T>
std::vector<T> times_col(const Mat<T>& m, const std::vector<T>& v) {
  if (int(v.size()) != m.cols) throw UsageError("matrix/column mismatch");
  std::vector<T> u(m.rows, T(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) u[i] += m(i, j) * v[j];
  return u;
}

template <class T>
T dot(const std::vector<T>& u, const std::vector<T>& v) {
  if (u.size() != v.size()) throw UsageError("vector length mismatch");
  T s(0);
  for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

/// Digit- (or adapted-word-) indexed family of nonnegative square matrices.
template <class T>
struct MatrixFamily {
  std::vector<Mat<T>> mats;
  std::string provenance;  // e.g. "M_i" or "Mhat_j"

  int dim() const { return mats.empty() ? 0 : mats[0].rows; }
  int size() const { return int(mats.size()); }

  Mat<T> star() const {
    Mat<T> s(dim(), dim());
    for (const auto& m : mats) s = s + m;
    return s;
  }
};

/// Eq.-level construction: M_i(h,k) = p_j exactly when edge (h,i,k,j) exists.
/// The probability vector must be nonnegative and sum to 1 (exactly in
/// rational mode, to 1e-12 in double mode).
template <class T>
MatrixFamily<T> build_matrices(const ISet& iset,
                               const std::vector<RelationEdge>& edges,
                               const std::vector<T>& probs, int b) {
  T sum(0);
  for (const auto& p : probs) {
    if (p < T(0)) throw UsageError("negative digit probability");
    sum += p;
  }
  if constexpr (std::is_same_v<T, double>) {
    if (std::abs(sum - 1.0) > 1e-12)
      throw UsageError("digit probabilities must sum to 1");
  } else {
    if (sum != T(1)) throw UsageError("digit probabilities must sum to 1");
  }
  for (const auto& e : edges)
    if (e.j >= int(probs.size()))
      throw UsageError("probability vector shorter than the digit alphabet");
  MatrixFamily<T> fam;
  fam.provenance = "M_i";
  fam.mats.assign(b, Mat<T>(iset.size(), iset.size()));
  for (const auto& e : edges) fam.mats[e.i](e.h, e.k) = probs[e.j];
  return fam;
}

/// Left-to-right product M_{w_0} ... M_{w_{n-1}}; empty word = identity.
template <class T>
Mat<T> word_product(const MatrixFamily<T>& fam, std::span<const int> w) {
  Mat<T> acc = Mat<T>::identity(fam.dim());
  for (int letter : w) {
    if (letter < 0 || letter >= fam.size())
      throw UsageError("word letter outside the family alphabet");
    acc = acc * fam.mats[letter];
  }
  return acc;
}

/// Nonnegative fixed vector R of `m_star` (spectral radius 1 on the relevant
/// component), normalized so that L.R = 1. Power iteration from the uniform
/// start vector; residual tolerance 1e-14.
/// Throws ConvergenceError when no nonnegative fixed vector emerges.
std::vector<double> fixed_vector(const Mat<double>& m_star,
                                 const std::vector<double>& L,
                                 double tol = 1e-14, int cap = 200000);

/// Exact fixed vector: solves (M - I) R = 0 over the rationals and
/// normalizes L.R = 1. Requires a one-dimensional kernel.
std::vector<Rat> fixed_vector_exact(const Mat<Rat>& m_star,
                                    const std::vector<Rat>& L);

}  // namespace pvconv
