#include "qma/dense.hpp"

#include <cmath>
#include <utility>

#include "qma/errors.hpp"

namespace qma {

namespace {

template <class F>
std::optional<std::size_t> choose_pivot(const DenseMatrix<F>& a, std::size_t col, double) {
  for (std::size_t r = col; r < a.n; ++r) {
    if (sgn(a(r, col)) != 0) return r;
  }
  return std::nullopt;
}

template <>
std::optional<std::size_t> choose_pivot(const DenseMatrix<double>& a, std::size_t col,
                                        double threshold) {
  std::size_t best = col;
  for (std::size_t r = col + 1; r < a.n; ++r) {
    if (std::fabs(a(r, col)) > std::fabs(a(best, col))) best = r;
  }
  if (std::fabs(a(best, col)) <= threshold) return std::nullopt;
  return best;
}

template <class F>
double pivot_threshold(const DenseMatrix<F>&) {
  return 0.0;
}

template <>
double pivot_threshold(const DenseMatrix<double>& a) {
  double scale = 0.0;
  for (double x : a.a) scale = std::max(scale, std::fabs(x));
  return 1e-12 * scale;
}

}  // namespace

template <class F>
std::optional<std::vector<F>> dense_solve(DenseMatrix<F> a, std::vector<F> b, std::size_t m) {
  const std::size_t n = a.n;
  if (b.size() != n * m) throw ShapeMismatch("dense_solve: right-hand side has the wrong size");
  const double threshold = pivot_threshold(a);
  for (std::size_t col = 0; col < n; ++col) {
    const auto pivot = choose_pivot(a, col, threshold);
    if (!pivot) return std::nullopt;
    if (*pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(*pivot, c));
      for (std::size_t c = 0; c < m; ++c) std::swap(b[col * m + c], b[*pivot * m + c]);
    }
    const F inv = F(1) / a(col, col);
    for (std::size_t c = col; c < n; ++c) a(col, c) *= inv;
    for (std::size_t c = 0; c < m; ++c) b[col * m + c] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == F(0)) continue;
      const F f = a(r, col);
      for (std::size_t c = col; c < n; ++c) {
        if (a(col, c) != F(0)) a(r, c) -= f * a(col, c);
      }
      for (std::size_t c = 0; c < m; ++c) {
        if (b[col * m + c] != F(0)) b[r * m + c] -= f * b[col * m + c];
      }
    }
  }
  return b;
}

template <class F>
DenseMatrix<F> to_matrix(const LegOperator<F>& op) {
  DenseMatrix<F> m(op.size());
  for (const auto& e : op.entries()) m(e.row, e.col) = e.value;
  return m;
}

template <class F>
LegOperator<F> from_matrix(int dim, int legs, const DenseMatrix<F>& m) {
  std::vector<typename LegOperator<F>::Entry> e;
  for (std::size_t r = 0; r < m.n; ++r) {
    for (std::size_t c = 0; c < m.n; ++c) {
      if (!FieldTraits<F>::is_zero(m(r, c))) e.push_back({r, c, m(r, c)});
    }
  }
  return LegOperator<F>(dim, legs, std::move(e));
}

template <class F>
std::optional<LegOperator<F>> try_inverse(const LegOperator<F>& op) {
  const std::size_t n = op.size();
  std::vector<F> rhs(n * n, F(0));
  for (std::size_t i = 0; i < n; ++i) rhs[i * n + i] = F(1);
  auto x = dense_solve(to_matrix(op), std::move(rhs), n);
  if (!x) return std::nullopt;
  DenseMatrix<F> m(n);
  m.a = std::move(*x);
  return from_matrix(op.dim(), op.legs(), m);
}

#define QMA_INSTANTIATE_DENSE(F)                                                         \
  template std::optional<std::vector<F>> dense_solve(DenseMatrix<F>, std::vector<F>,     \
                                                     std::size_t);                       \
  template DenseMatrix<F> to_matrix(const LegOperator<F>&);                              \
  template LegOperator<F> from_matrix(int, int, const DenseMatrix<F>&);                  \
  template std::optional<LegOperator<F>> try_inverse(const LegOperator<F>&);

QMA_INSTANTIATE_DENSE(Rational)
QMA_INSTANTIATE_DENSE(double)

}  // namespace qma
