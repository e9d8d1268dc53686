#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qma/errors.hpp"
#include "qma/idempotents.hpp"

using qma::LegOperator;
using qma::Rational;
using Op = LegOperator<Rational>;

namespace {

struct Fixture {
  qma::DeformParams<Rational> p;
  qma::YangBaxterData<Rational> r;
  qma::BmwCertificate<Rational> bmw;
  qma::CompatiblePair<Rational> pair;
  qma::BmwCertificate<Rational> bmw_f;
  qma::IdempotentTower<Rational> t;
  qma::IdempotentTower<Rational> tf;
  qma::CheckLog<Rational> log{"tower"};

  Fixture(int k, bool reflection, int m, int s_max = -1)
      : p(qma::make_params(k, Rational(11, 10))),
        r(qma::skew_invert(qma::standard_O(p))),
        bmw(qma::bmw_certify(r, p)),
        pair(qma::make_pair(r, reflection ? r : qma::flip<Rational>(k))),
        bmw_f(qma::bmw_certify(pair.twisted, p)) {
    t = qma::build_towers(r, bmw, {k + 1, m, s_max}, log);
    tf = qma::build_towers(pair.twisted, bmw_f, {k, m, 2}, log);
  }
};

// Eigenvalue form of the q-antisymmetrizer rank: for rank-r idempotents the
// rank equals the trace, which the tower log checks; here the binomial
// pattern is compared against an independent count.
long long binomial(int n, int r) {
  long long out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

}  // namespace

TEST_CASE("baxterized elements") {
  const auto p = qma::make_params(3, Rational(11, 10));
  const auto R = qma::standard_O(p);
  const auto K = qma::kappa_of(R, p);
  CHECK(qma::baxterized_local(R, K, p, 1, Rational(1)) == qma::identity<Rational>(3, 2));
  CHECK(qma::baxterized_local(R, K, p, -1, Rational(1)) == qma::identity<Rational>(3, 2));
  // Poles at x = q mu (plus sign) and x = -mu/q (minus sign).
  CHECK_THROWS_AS(qma::baxterized_local(R, K, p, 1, Rational(p.q * p.mu)), qma::ForbiddenParameter);
  CHECK_THROWS_AS(qma::baxterized_local(R, K, p, -1, Rational(-p.mu / p.q)),
                  qma::ForbiddenParameter);
  // a^(2) = q/2_q · σ⁻(q⁻²).
  const auto a2 = (p.q / qma::qnum(p, 2)) *
                  qma::baxterized_local(R, K, p, -1, qma::ipow(p.q, -2));
  qma::CheckLog<Rational> log("tower");
  const auto data = qma::skew_invert(R);
  const auto t = qma::build_towers(data, qma::bmw_certify(data, p), {3, 1, 2}, log);
  CHECK(t.a[2] == a2);
}

TEST_CASE("O(3) towers with the flip pair") {
  Fixture f(3, false, 3);
  CHECK(f.log.failures() == 0);
  CHECK(f.t.a[1] == qma::identity<Rational>(3, 1));
  CHECK(f.t.c[1] == (1 / f.p.eta) * f.bmw.K);
  CHECK(qma::rank(f.t.a[2]) == 3);
  for (int i = 1; i <= 3; ++i) CHECK(qma::rank(f.t.a[i]) == binomial(3, i));
  CHECK(f.t.a[4].is_zero());

  qma::CheckLog<Rational> contractors("contractors");
  qma::certify_contractors(f.t, f.tf, f.pair, contractors);
  CHECK(contractors.failures() == 0);
  qma::CheckLog<Rational> spectral("spectral");
  qma::certify_spectral(f.t, f.tf, f.pair, spectral);
  CHECK(spectral.failures() == 0);
  for (const auto& rec : spectral.records()) CHECK_MESSAGE(rec.status == qma::Status::pass, rec.name);

  const auto h = qma::detect_height(f.t);
  CHECK(h.height == 3);
  CHECK(h.rank_one);
}

TEST_CASE("O(3) towers with the reflection pair") {
  Fixture f(3, true, 2);
  qma::CheckLog<Rational> log("contractors");
  qma::certify_contractors(f.t, f.tf, f.pair, log);
  qma::certify_spectral(f.t, f.tf, f.pair, log);
  CHECK(log.failures() == 0);
}

TEST_CASE("O(4) height and contractors") {
  Fixture f(4, false, 2, 3);
  CHECK(f.log.failures() == 0);
  const auto h = qma::detect_height(f.t);
  CHECK(h.height == 4);
  CHECK(h.rank_one);
  for (int i = 1; i <= 4; ++i) CHECK(h.ranks[i] == binomial(4, i));
  qma::CheckLog<Rational> log("contractors");
  qma::certify_contractors(f.t, f.tf, f.pair, log);
  qma::certify_spectral(f.t, f.tf, f.pair, log);
  CHECK(log.failures() == 0);
}

TEST_CASE("closed-form quantum dimensions") {
  const auto p = qma::make_params(4, Rational(3, 2));
  Rational prod(1);
  for (int i = 1; i <= 4; ++i) {
    prod *= qma::delta(p, i);
    CHECK(qma::qdim_closed_form(p, i) == prod);
  }
  CHECK(prod == qma::ipow(p.q, 4 * (1 - 4)));
}

TEST_CASE("height detection fails on a truncated tower") {
  Fixture f(3, false, 1, 2);
  auto t = f.t;
  t.a.resize(3);
  CHECK_THROWS_AS(qma::detect_height(t), qma::HeightNotFound);
}
