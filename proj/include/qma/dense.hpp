#pragma once

#include <optional>
#include <vector>

#include "qma/tensor.hpp"

namespace qma {

// Row-major square matrix; only used for the small systems (k⁴ unknowns at
// most) that arise from skew inversion and operator inversion.
template <class F>
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<F> a;

  explicit DenseMatrix(std::size_t size) : n(size), a(size * size, F(0)) {}
  F& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

// Solves A X = B for X (B is n×m, row-major). Returns nullopt when A is
// singular; inexact fields treat pivots below 1e-12·max|A| as zero.
template <class F>
std::optional<std::vector<F>> dense_solve(DenseMatrix<F> a, std::vector<F> b, std::size_t m);

template <class F>
DenseMatrix<F> to_matrix(const LegOperator<F>& op);
template <class F>
LegOperator<F> from_matrix(int dim, int legs, const DenseMatrix<F>& m);

// Exact inverse of an operator, nullopt when singular.
template <class F>
std::optional<LegOperator<F>> try_inverse(const LegOperator<F>& op);

}  // namespace qma
