#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace dppc {

// Dense row-major matrix over an arbitrary value algebra (see semiring.hpp).
// The same templates drive exact evaluation (Value = mpq_class, ...) and
// circuit compilation (Value = circuit node id), so evaluating a term and
// compiling it are literally the same recursion.
template <class V>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<V> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const V& fill) : rows(r), cols(c), a(r * c, fill) {}

  V& at(std::size_t r, std::size_t c) {
    assert(r < rows && c < cols);
    return a[r * cols + c];
  }
  const V& at(std::size_t r, std::size_t c) const {
    assert(r < rows && c < cols);
    return a[r * cols + c];
  }
  bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

template <class A, class V = typename A::Value>
Matrix<V> matmul(const A& alg, const Matrix<V>& x, const Matrix<V>& y) {
  assert(x.cols == y.rows);
  Matrix<V> z(x.rows, y.cols, alg.zero());
  // zero summands are skipped: 0 is absorbing for mul and neutral for add in
  // every algebra used here, and wiring matrices are almost entirely zero
  const V zero = alg.zero();
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const V& xik = x.at(i, k);
      if (alg.eq(xik, zero)) continue;
      for (std::size_t j = 0; j < y.cols; ++j) {
        const V& ykj = y.at(k, j);
        if (alg.eq(ykj, zero)) continue;
        z.at(i, j) = alg.add(z.at(i, j), alg.mul(xik, ykj));
      }
    }
  return z;
}

// Kronecker product with the first factor most significant:
//   (x (*) y)[ix*y.rows + iy][jx*y.cols + jy] = x[ix][jx] * y[iy][jy].
// Matches the index encoding of interface lists (first variable = most
// significant digit).
template <class A, class V = typename A::Value>
Matrix<V> kronecker(const A& alg, const Matrix<V>& x, const Matrix<V>& y) {
  Matrix<V> z(x.rows * y.rows, x.cols * y.cols, alg.zero());
  for (std::size_t ix = 0; ix < x.rows; ++ix)
    for (std::size_t jx = 0; jx < x.cols; ++jx)
      for (std::size_t iy = 0; iy < y.rows; ++iy)
        for (std::size_t jy = 0; jy < y.cols; ++jy)
          z.at(ix * y.rows + iy, jx * y.cols + jy) = alg.mul(x.at(ix, jx), y.at(iy, jy));
  return z;
}

template <class A, class V = typename A::Value>
Matrix<V> identity(const A& alg, std::size_t n) {
  Matrix<V> z(n, n, alg.zero());
  for (std::size_t i = 0; i < n; ++i) z.at(i, i) = alg.one();
  return z;
}

template <class A, class V = typename A::Value>
bool matrix_eq(const A& alg, const Matrix<V>& x, const Matrix<V>& y) {
  if (!x.same_shape(y)) return false;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    if (!alg.eq(x.a[i], y.a[i])) return false;
  return true;
}

}  // namespace dppc
