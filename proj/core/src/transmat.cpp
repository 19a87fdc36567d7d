#include "pvconv/transmat.hpp"

#include <cmath>

namespace pvconv {

std::vector<double> fixed_vector(const Mat<double>& m_star,
                                 const std::vector<double>& L, double tol,
                                 int cap) {
  const int n = m_star.rows;
  if (m_star.cols != n || int(L.size()) != n)
    throw UsageError("fixed_vector: dimension mismatch");
  std::vector<double> v(n, 1.0);
  auto renorm = [&](std::vector<double>& x) {
    double lr = dot(L, x);
    if (lr <= 0.0) throw ConvergenceError("fixed_vector: L.R degenerated");
    for (auto& e : x) e /= lr;
  };
  renorm(v);
  for (int it = 0; it < cap; ++it) {
    std::vector<double> w = times_col(m_star, v);
    renorm(w);
    double resid = 0.0;
    std::vector<double> chk = times_col(m_star, w);
    for (int i = 0; i < n; ++i)
      resid = std::max(resid, std::abs(chk[i] - w[i]));
    v = std::move(w);
    if (resid <= tol) {
      for (double e : v)
        if (e < -tol)
          throw ConvergenceError("fixed_vector: negative component");
      for (auto& e : v)
        if (e < 0.0) e = 0.0;
      return v;
    }
  }
  throw ConvergenceError(
      "fixed_vector: no nonnegative fixed vector within the iteration cap "
      "(family not adapted?)");
}

std::vector<Rat> fixed_vector_exact(const Mat<Rat>& m_star,
                                    const std::vector<Rat>& L) {
  const int n = m_star.rows;
  if (m_star.cols != n || int(L.size()) != n)
    throw UsageError("fixed_vector_exact: dimension mismatch");
  // Gaussian elimination on (M - I) x = 0.
  Mat<Rat> a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = m_star(i, j) - (i == j ? Rat(1) : Rat(0));

  std::vector<int> pivot_col(n, -1);
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (sgn(a(r, col)) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(rank, j));
    Rat inv = a(rank, col);
    for (int j = 0; j < n; ++j) a(rank, j) /= inv;
    for (int r = 0; r < n; ++r) {
      if (r == rank || sgn(a(r, col)) == 0) continue;
      Rat f = a(r, col);
      for (int j = 0; j < n; ++j) a(r, j) -= f * a(rank, j);
    }
    pivot_col[rank++] = col;
  }
  if (rank != n - 1)
    throw ConvergenceError("fixed_vector_exact: kernel is not 1-dimensional");

  int free_col = -1;
  for (int col = 0, r = 0; col < n; ++col) {
    if (r < rank && pivot_col[r] == col) {
      ++r;
      continue;
    }
    free_col = col;
    break;
  }
  std::vector<Rat> x(n, Rat(0));
  x[free_col] = Rat(1);
  for (int r = 0; r < rank; ++r) x[pivot_col[r]] = -a(r, free_col);

  Rat lr(0);
  for (int i = 0; i < n; ++i) lr += L[i] * x[i];
  if (sgn(lr) == 0)
    throw ConvergenceError("fixed_vector_exact: L.R = 0, cannot normalize");
  for (auto& e : x) e /= lr;
  for (const auto& e : x)
    if (sgn(e) < 0)
      throw ConvergenceError("fixed_vector_exact: negative component");
  return x;
}

}  // namespace pvconv
