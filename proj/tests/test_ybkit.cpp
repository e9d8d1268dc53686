#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qma/dense.hpp"
#include "qma/errors.hpp"
#include "qma/ybkit.hpp"

using qma::LegOperator;
using qma::Rational;
using Op = LegOperator<Rational>;

namespace {

const Rational kV(11, 10);

Op reversal(int dim, int legs) {
  std::vector<Op::Entry> e;
  const Op shape(dim, legs);
  for (qma::Index c = 0; c < shape.size(); ++c) {
    auto d = qma::index_digits(c, dim, legs);
    qma::Index r = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) r = r * dim + *it;
    e.push_back({r, c, Rational(1)});
  }
  return Op(dim, legs, std::move(e));
}

}  // namespace

TEST_CASE("standard O(k) matrices pass BMW certification") {
  for (int k = 2; k <= 5; ++k) {
    CAPTURE(k);
    const auto p = qma::make_params(k, kV);
    const Op R = qma::standard_O(p);
    CHECK(R.nnz() <= static_cast<std::size_t>(3 * k * k));
    const auto data = qma::skew_invert(R);
    const auto cert = qma::bmw_certify(data, p);
    CHECK(cert.checks.failures() == 0);
    CHECK(cert.checks.records().size() > 20);
    CHECK(qma::rank(cert.K) == 1);
    CHECK(data.C * data.D == (p.mu * p.mu) * qma::identity<Rational>(k, 1));
    CHECK(qma::full_trace(data.D) == p.mu * p.eta);
  }
}

TEST_CASE("spectrum of the standard matrix is {q, -1/q, mu}") {
  for (int k : {3, 4}) {
    const auto p = qma::make_params(k, kV);
    const Op R = qma::standard_O(p);
    const Op I = qma::identity<Rational>(k, 2);
    const std::size_t n = static_cast<std::size_t>(k * k);
    const std::size_t null_q = n - qma::rank(R - p.q * I);
    const std::size_t null_mq = n - qma::rank(R + (1 / p.q) * I);
    const std::size_t null_mu = n - qma::rank(R - p.mu * I);
    CHECK(null_q > 0);
    CHECK(null_mq > 0);
    CHECK(null_mu == 1);
    CHECK(null_q + null_mq + null_mu == n);
    // Cubic characteristic identity.
    CHECK((R - p.q * I) * (R + (1 / p.q) * I) * (R - p.mu * I) == Op(k, 2));
  }
}

TEST_CASE("flip data agrees with the generic solver") {
  for (int k : {2, 3}) {
    const auto solved = qma::skew_invert(qma::permutation_flip<Rational>(k));
    const auto flip = qma::flip<Rational>(k);
    CHECK(solved.psi == flip.psi);
    CHECK(solved.C == qma::identity<Rational>(k, 1));
    CHECK(solved.D == qma::identity<Rational>(k, 1));
    CHECK(solved.R_inv == flip.R);
  }
}

TEST_CASE("the flip is not of BMW type") {
  const auto p = qma::make_params(3, kV);
  CHECK_THROWS_AS(qma::bmw_certify(qma::flip<Rational>(3), p), qma::NotBmwType);
}

TEST_CASE("solved skew inverses satisfy both defining conditions") {
  const auto p = qma::make_params(4, kV);
  const auto data = qma::skew_invert(qma::standard_O(p));
  qma::CheckLog<Rational> log("bmw");
  qma::certify_yang_baxter(data, log);
  CHECK(log.failures() == 0);
  CHECK(log.records().size() == 7);
}

TEST_CASE("singular operators are rejected") {
  CHECK_THROWS_AS(qma::skew_invert(Op(2, 2)), qma::ConstructionInvalid);
}

TEST_CASE("compatible pairs") {
  const auto p = qma::make_params(3, kV);
  const auto r = qma::skew_invert(qma::standard_O(p));
  const auto flip = qma::flip<Rational>(3);
  const auto rp = qma::make_pair(r, flip);
  CHECK(rp.f_is_flip);
  CHECK(rp.checks.failures() == 0);
  const Op P = qma::permutation_flip<Rational>(3);
  CHECK(qma::twist(rp) == P * r.R * P);
  const auto rr = qma::make_pair(r, r);
  CHECK(rr.f_is_r);
  CHECK(qma::twist(rr) == r.R);
  // The twisted matrix is again strict skew invertible and of BMW type.
  CHECK_NOTHROW(qma::bmw_certify(rp.twisted, p));

  std::mt19937 rng(1);
  std::uniform_int_distribution<int> u(-3, 3);
  std::vector<Rational> vals(81);
  for (auto& x : vals) x = u(rng);
  for (int i = 0; i < 9; ++i) vals[i * 9 + i] += 20;
  const Op G = qma::from_dense(3, 2, vals);
  REQUIRE(qma::try_inverse(G).has_value());
  qma::YangBaxterData<Rational> fd;
  fd.R = G;
  fd.R_inv = *qma::try_inverse(G);
  CHECK_THROWS_AS(qma::make_pair(r, fd), qma::NotCompatible);
}

TEST_CASE("Z-strings") {
  const auto p = qma::make_params(3, kV);
  const auto r = qma::skew_invert(qma::standard_O(p));
  CHECK(qma::z_string(r.R, 1) == qma::identity<Rational>(3, 1));
  CHECK(qma::z_string(r.R, 2) == r.R);
  const Op P = qma::permutation_flip<Rational>(3);
  for (int i = 1; i <= 4; ++i) CHECK(qma::z_string(P, i) == reversal(3, i));
  CHECK(qma::z_word(4) == std::vector<int>{1, 2, 3, 1, 2, 1});
  for (const auto& f : {qma::flip<Rational>(3), r}) {
    const auto pair = qma::make_pair(r, f);
    qma::CheckLog<Rational> log("contractors");
    qma::certify_z_strings(pair, 4, log);
    CHECK(log.failures() == 0);
  }
}

TEST_CASE("braid images") {
  const auto p = qma::make_params(3, kV);
  const auto d = qma::skew_invert(qma::standard_O(p));
  CHECK(qma::braid_image(d, {}, 3) == qma::identity<Rational>(3, 3));
  CHECK(qma::braid_image(d, {1, -1}, 3) == qma::identity<Rational>(3, 3));
  CHECK(qma::braid_image(d, {1, 2, 1}, 3) == qma::braid_image(d, {2, 1, 2}, 3));
  CHECK(qma::braid_image(d, {2}, 3) == qma::embed_at(d.R, 2, 3));
  CHECK_THROWS_AS(qma::braid_image(d, {3}, 3), qma::LegRangeError);
}

TEST_CASE("double precision evaluation certifies within tolerance") {
  const auto p = qma::convert_params<double>(qma::make_params(4, kV));
  const auto R = qma::standard_O(p, 1e-9);
  const auto cert = qma::bmw_certify(qma::skew_invert(R, 1e-9), p, 1e-9);
  CHECK(cert.checks.failures() == 0);
}
