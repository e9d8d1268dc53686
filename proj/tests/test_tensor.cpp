#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "qma/errors.hpp"
#include "qma/tensor.hpp"

using qma::Index;
using qma::LegOperator;
using qma::Rational;
using Op = LegOperator<Rational>;
using Dense = std::vector<std::vector<Rational>>;

namespace {

Dense to_dense(const Op& a) {
  const Index n = a.size();
  Dense d(n, std::vector<Rational>(n, Rational(0)));
  for (const auto& e : a.entries()) d[e.row][e.col] = e.value;
  return d;
}

Dense matmul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < n; ++t)
      if (a[i][t] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][t] * b[t][j];
  return c;
}

Dense kron(const Dense& a, const Dense& b) {
  const std::size_t n = a.size() * b.size();
  Dense c(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      for (std::size_t r = 0; r < b.size(); ++r)
        for (std::size_t s = 0; s < b.size(); ++s)
          c[i * b.size() + r][j * b.size() + s] = a[i][j] * b[r][s];
  return c;
}

Dense eye(std::size_t n) {
  Dense d(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
  return d;
}

// Bareiss fraction-free elimination on a dense copy, with row pivoting.
std::size_t dense_rank(Dense a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

Op random_op(std::mt19937& rng, int dim, int legs, double density) {
  Op shape(dim, legs);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<Op::Entry> e;
  for (Index r = 0; r < shape.size(); ++r)
    for (Index c = 0; c < shape.size(); ++c)
      if (u(rng) < density) {
        Rational x(num(rng), den(rng));
        x.canonicalize();
        e.push_back({r, c, x});
      }
  return Op(dim, legs, std::move(e));
}

}  // namespace

TEST_CASE("construction canonicalizes entries") {
  Op a(2, 1, {{1, 0, Rational(1)}, {0, 1, Rational(2)}, {1, 0, Rational(-1)}, {0, 0, Rational(0)}});
  REQUIRE(a.nnz() == 1);
  CHECK(a.entries()[0].row == 0);
  CHECK(a.entries()[0].col == 1);
  CHECK(a.at(0, 1) == 2);
  CHECK(a.at(1, 0) == 0);
  CHECK_THROWS_AS(Op(2, 1, {{2, 0, Rational(1)}}), qma::ShapeMismatch);
}

TEST_CASE("compose, add and scale match dense arithmetic") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const Op a = random_op(rng, 3, 2, 0.3);
    const Op b = random_op(rng, 3, 2, 0.3);
    CHECK(to_dense(a * b) == matmul(to_dense(a), to_dense(b)));
    const Dense s = to_dense(a + Rational(3, 2) * b);
    const Dense da = to_dense(a);
    const Dense db = to_dense(b);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) CHECK(s[i][j] == da[i][j] + Rational(3, 2) * db[i][j]);
    CHECK((a - a).is_zero());
  }
  CHECK_THROWS_AS(random_op(rng, 2, 2, 0.5) * random_op(rng, 2, 3, 0.5), qma::ShapeMismatch);
}

TEST_CASE("embedding and tensor product agree with Kronecker products") {
  std::mt19937 rng(11);
  const Op a = random_op(rng, 2, 2, 0.5);
  const Op b = random_op(rng, 2, 1, 0.8);
  CHECK(to_dense(qma::embed_at(a, 2, 4)) == kron(eye(2), kron(to_dense(a), eye(2))));
  CHECK(to_dense(qma::embed_at(a, 1, 2)) == to_dense(a));
  CHECK(to_dense(qma::tensor(a, b)) == kron(to_dense(a), to_dense(b)));
  CHECK_THROWS_AS(qma::embed_at(a, 3, 3), qma::LegRangeError);
}

TEST_CASE("leg-local kernels match composition with the embedding") {
  std::mt19937 rng(3);
  for (int pos = 1; pos <= 3; ++pos) {
    const Op local = random_op(rng, 3, 2, 0.4);
    const Op x = random_op(rng, 3, 4, 0.02);
    const Op full = qma::embed_at(local, pos, 4);
    CHECK(qma::apply_left(local, pos, x) == full * x);
    CHECK(qma::apply_right(x, local, pos) == x * full);
  }
}

TEST_CASE("flip swaps tensor factors") {
  std::mt19937 rng(5);
  const Op a = random_op(rng, 3, 1, 0.6);
  const Op b = random_op(rng, 3, 1, 0.6);
  const Op p = qma::permutation_flip<Rational>(3);
  CHECK(p * qma::tensor(a, b) * p == qma::tensor(b, a));
  const std::vector<int> perm{2, 1};
  CHECK(qma::permute_legs(qma::tensor(a, b), perm) == qma::tensor(b, a));
}

TEST_CASE("leg permutation relabels a three-leg product") {
  std::mt19937 rng(9);
  const Op a = random_op(rng, 2, 1, 0.7);
  const Op b = random_op(rng, 2, 1, 0.7);
  const Op c = random_op(rng, 2, 1, 0.7);
  const std::vector<int> perm{3, 1, 2};
  CHECK(qma::permute_legs(qma::tensor(qma::tensor(a, b), c), perm) ==
        qma::tensor(qma::tensor(c, a), b));
}

TEST_CASE("partial traces") {
  std::mt19937 rng(13);
  const Op a = random_op(rng, 3, 1, 0.7);
  const Op b = random_op(rng, 3, 1, 0.7);
  const Op c = random_op(rng, 3, 1, 0.7);
  const Op abc = qma::tensor(qma::tensor(a, b), c);
  const std::vector<int> middle{2};
  CHECK(qma::plain_trace(abc, middle) == qma::full_trace(b) * qma::tensor(a, c));
  const std::vector<int> all{1, 2, 3};
  CHECK(qma::plain_trace(abc, all).scalar() ==
        qma::full_trace(a) * qma::full_trace(b) * qma::full_trace(c));
  const Op w = random_op(rng, 3, 1, 0.7);
  CHECK(qma::weighted_trace(abc, middle, w) == qma::full_trace(w * b) * qma::tensor(a, c));
  const std::vector<int> bad{4};
  CHECK_THROWS_AS(qma::plain_trace(abc, bad), qma::LegRangeError);
}

TEST_CASE("rank matches dense elimination") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const Op a = random_op(rng, 2, 3, 0.15);
    CHECK(qma::rank(a) == dense_rank(to_dense(a)));
    CHECK(qma::rank(qma::convert<double>(a), 1e-9) == dense_rank(to_dense(a)));
  }
  const Op a = random_op(rng, 3, 1, 1.0);
  const Op b = random_op(rng, 3, 1, 1.0);
  const Op outer = qma::tensor(a, b);
  CHECK(qma::rank(outer) == dense_rank(to_dense(outer)));
  CHECK(qma::rank(qma::identity<Rational>(2, 3)) == 8);
}

TEST_CASE("compare reports the worst entry") {
  Op a(2, 1, {{0, 0, Rational(1)}, {1, 1, Rational(2)}});
  Op b(2, 1, {{0, 0, Rational(1)}, {0, 1, Rational(1, 2)}, {1, 1, Rational(5)}});
  const auto d = qma::compare(a, b);
  CHECK(d.count == 2);
  CHECK(d.max_abs == doctest::Approx(3.0));
  CHECK(d.witness.find("(1,1)") != std::string::npos);
  CHECK(qma::compare(a, a).count == 0);
}

TEST_CASE("index digits put leg 1 first") {
  CHECK(qma::index_digits(5, 3, 2) == std::vector<int>{1, 2});
  CHECK(qma::index_digits(0, 3, 0).empty());
}
