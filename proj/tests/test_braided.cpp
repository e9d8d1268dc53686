#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qma/braided.hpp"
#include "qma/dense.hpp"
#include "qma/errors.hpp"

using qma::Copy;
using qma::Rational;
using Poly = qma::TwoCopyPoly<Rational>;

namespace {

struct Setup {
  qma::DeformParams<Rational> p;
  qma::YangBaxterData<Rational> r;
  qma::CompatiblePair<Rational> pair;

  Setup(int k, bool reflection)
      : p(qma::make_params(k, Rational(11, 10))),
        r(qma::skew_invert(qma::standard_O(p))),
        pair(qma::make_pair(r, reflection ? r : qma::flip<Rational>(k))) {}
};

std::uint8_t u8(int x) { return static_cast<std::uint8_t>(x); }

// Coefficient matrices of M̈₁F₁Ṁ₁F₁⁻¹ and F₁Ṁ₁F₁⁻¹M̈₁ from the explicit sums
//   lhs[(i,j),(l,m)] = Σ F[(n,j),(a,x)] F⁻¹[(b,x),(l,m)] M̈^i_n Ṁ^a_b
//   rhs[(i,j),(l,m)] = Σ F[(i,j),(a,x)] F⁻¹[(b,x),(n,m)] Ṁ^a_b M̈^n_l
void oracle_system(const qma::YangBaxterData<Rational>& f, qma::DenseMatrix<Rational>& A,
                   qma::DenseMatrix<Rational>& B) {
  const std::size_t k = static_cast<std::size_t>(f.dim());
  const auto Fm = qma::to_matrix(f.R);
  const auto Fi = qma::to_matrix(f.R_inv);
  auto pair_ix = [k](std::size_t x, std::size_t y) { return x * k + y; };
  auto word4 = [k](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return ((a * k + b) * k + c) * k + d;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l)
        for (std::size_t m = 0; m < k; ++m) {
          const std::size_t e = pair_ix(i, j) * k * k + pair_ix(l, m);
          for (std::size_t n = 0; n < k; ++n)
            for (std::size_t a = 0; a < k; ++a)
              for (std::size_t b = 0; b < k; ++b)
                for (std::size_t x = 0; x < k; ++x) {
                  A(e, word4(i, n, a, b)) += Fm(pair_ix(n, j), pair_ix(a, x)) * Fi(pair_ix(b, x), pair_ix(l, m));
                  B(e, word4(a, b, n, l)) += Fm(pair_ix(i, j), pair_ix(a, x)) * Fi(pair_ix(b, x), pair_ix(n, m));
                }
        }
}

void expect_clean(const qma::CheckLog<Rational>& log) {
  for (const auto& rec : log.records()) {
    CHECK_MESSAGE(rec.status != qma::Status::fail, rec.name << " " << rec.witness);
  }
}

}  // namespace

TEST_CASE("words and polynomials") {
  const qma::TwoCopyWord w{{Copy::ddot, 0, 1}, {Copy::dot, 1, 1}, {Copy::dot, 0, 0}};
  CHECK(qma::bidegree(w) == std::pair<int, int>{2, 1});
  CHECK_FALSE(qma::is_normal(w));
  CHECK(qma::is_normal({{Copy::dot, 0, 1}, {Copy::ddot, 1, 1}}));
  Poly x = qma::poly_word<Rational>(w, Rational(2));
  qma::poly_axpy(x, Rational(-2), qma::poly_word<Rational>(w));
  CHECK(x.empty());
  const auto y = qma::poly_mul(qma::poly_word<Rational>({{Copy::dot, 0, 0}}, Rational(3)),
                               qma::poly_word<Rational>({{Copy::ddot, 1, 0}}, Rational(1, 2)));
  REQUIRE(y.size() == 1);
  CHECK(y.begin()->second == Rational(3, 2));
  CHECK(y.begin()->first.size() == 2);
}

TEST_CASE("exchange rule against the explicit coefficient system") {
  for (int k : {2, 3}) {
    for (bool refl : {false, true}) {
      CAPTURE(k);
      CAPTURE(refl);
      Setup s(k, refl);
      const auto rule = qma::exchange_map(s.pair.f);
      const std::size_t n = static_cast<std::size_t>(k * k * k * k);
      qma::DenseMatrix<Rational> A(n), B(n);
      oracle_system(s.pair.f, A, B);
      // A · forward = B and B · inverse = A.
      CHECK(qma::from_matrix(k, 4, A) * rule.forward == qma::from_matrix(k, 4, B));
      CHECK(qma::from_matrix(k, 4, B) * rule.inverse == qma::from_matrix(k, 4, A));
      qma::CheckLog<Rational> log("braided");
      qma::verify_exchange(rule, 400, log);
      expect_clean(log);
    }
  }
}

TEST_CASE("flip exchange is the plain swap") {
  const int k = 3;
  const auto rule = qma::exchange_map(qma::flip<Rational>(k));
  std::vector<qma::LegOperator<Rational>::Entry> e;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        for (int d = 0; d < k; ++d) {
          e.push_back({static_cast<qma::Index>(((a * k + b) * k + c) * k + d), static_cast<qma::Index>(((c * k + d) * k + a) * k + b), Rational(1)});
        }
  const qma::LegOperator<Rational> swap(k, 4, e);
  CHECK(rule.forward == swap);
  CHECK(rule.inverse == swap);
  const auto nf = qma::normal_form(qma::poly_word<Rational>({{Copy::ddot, 2, 0}, {Copy::dot, 1, 2}}), rule);
  CHECK(nf == qma::poly_word<Rational>({{Copy::dot, 1, 2}, {Copy::ddot, 2, 0}}));
}

TEST_CASE("singular twist is rejected") {
  Setup s(2, false);
  auto bad = s.pair.f;
  bad.R = qma::LegOperator<Rational>(2, 2);
  bad.R_inv = qma::LegOperator<Rational>(2, 2);
  CHECK_THROWS_AS(qma::exchange_map(bad), qma::ExchangeNotInvertible);
}

TEST_CASE("mixed commutation and the coproduct") {
  for (int k : {2, 3}) {
    for (bool refl : {false, true}) {
      CAPTURE(k);
      CAPTURE(refl);
      Setup s(k, refl);
      const auto rule = qma::exchange_map(s.pair.f);
      qma::CheckLog<Rational> log("braided");
      qma::verify_mixed_commutation(s.pair, rule, log);
      qma::verify_hom_degree22(s.pair, rule, log);
      expect_clean(log);
      CHECK(log.failures() == 0);
    }
  }
}

TEST_CASE("relation ideal membership on constructed elements") {
  const int k = 2;
  Setup s(k, true);
  const auto rule = qma::exchange_map(s.pair.f);
  const qma::RelationIdeal<Rational> ideal(s.pair, 0.0);
  const auto tdot = qma::relation_defect(qma::generator_matrix<Rational>(Copy::dot, k), s.pair, 1, 2);
  const auto tddot = qma::relation_defect(qma::generator_matrix<Rational>(Copy::ddot, k), s.pair, 1, 2);
  std::mt19937 gen(7);
  std::uniform_int_distribution<int> ix(0, k - 1);
  std::uniform_int_distribution<int> cf(-3, 3);
  Poly member;
  for (const auto& [rc, t] : tdot.entries) {
    const qma::TwoCopyWord tail{{Copy::ddot, u8(ix(gen)), u8(ix(gen))}, {Copy::ddot, u8(ix(gen)), u8(ix(gen))}};
    qma::poly_axpy(member, Rational(cf(gen)), qma::poly_mul(t, qma::poly_word<Rational>(tail)));
  }
  for (const auto& [rc, t] : tddot.entries) {
    const qma::TwoCopyWord head{{Copy::dot, u8(ix(gen)), u8(ix(gen))}, {Copy::dot, u8(ix(gen)), u8(ix(gen))}};
    qma::poly_axpy(member, Rational(cf(gen)), qma::poly_mul(qma::poly_word<Rational>(head), t));
  }
  const auto nf = qma::normal_form(member, rule);
  CHECK(ideal.residual(nf).empty());
  CHECK(ideal.relation_rank() > 0);

  Poly outsider = nf;
  qma::poly_axpy(outsider, Rational(1),
                 qma::poly_word<Rational>({{Copy::dot, 0, 0}, {Copy::dot, 0, 0}, {Copy::ddot, 1, 1}, {Copy::ddot, 1, 1}}));
  CHECK_FALSE(ideal.residual(outsider).empty());
  CHECK_FALSE(ideal.residual(qma::poly_word<Rational>({{Copy::dot, 1, 0}})).empty());
  CHECK_THROWS_AS(
      ideal.residual(qma::poly_word<Rational>({{Copy::dot, 0, 0}, {Copy::dot, 0, 0}, {Copy::dot, 0, 0}})),
      qma::ShapeMismatch);
}

TEST_CASE("float shadow of the exchange rule") {
  Setup s(2, true);
  const auto exact = qma::exchange_map(s.pair.f);
  const auto rd = qma::skew_invert(qma::convert<double>(s.r.R), 1e-9);
  const auto pair = qma::make_pair(rd, rd, 1e-9);
  const auto rule = qma::exchange_map(pair.f);
  CHECK(qma::compare(rule.forward, qma::convert<double>(exact.forward)).max_abs < 1e-10);
  qma::CheckLog<double> log("float", 1e-8);
  qma::verify_exchange(rule, 200, log);
  qma::verify_mixed_commutation(pair, rule, log);
  qma::verify_hom_degree22(pair, rule, log);
  CHECK(log.failures() == 0);
}
