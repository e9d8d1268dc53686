#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qma/dense.hpp"
#include "qma/errors.hpp"
#include "qma/qmarep.hpp"

using qma::LegOperator;
using qma::Rational;
using qma::RepTag;
using Op = LegOperator<Rational>;

namespace {

struct Setup {
  qma::DeformParams<Rational> p;
  qma::YangBaxterData<Rational> r;
  qma::BmwCertificate<Rational> bmw;
  qma::CompatiblePair<Rational> pair;
  qma::IdempotentTower<Rational> t;
  qma::CheckLog<Rational> log{"qmarep"};

  Setup(int k, bool reflection, int m = 2, int s_max = 2)
      : p(qma::make_params(k, Rational(11, 10))),
        r(qma::skew_invert(qma::standard_O(p))),
        bmw(qma::bmw_certify(r, p)),
        pair(qma::make_pair(r, reflection ? r : qma::flip<Rational>(k))) {
    t = qma::build_towers(r, bmw, {k + 1, m, s_max}, log);
  }
};

// ch computed from dense matrices: the string as a product of embedded
// factors, then Σ over matrix indices of D-weighted diagonal blocks.
Op dense_ch(const qma::Representation<Rational>& rep, const Op& x) {
  const int k = rep.dim();
  const int n = x.legs();
  const int total = n + 1;
  Op s = qma::identity<Rational>(k, total);
  for (int i = 1; i <= n; ++i) {
    Op copy = qma::embed_at(rep.M_image, 1, total);
    // M̄_i = F_{i-1} M̄_{i-1} F_{i-1}⁻¹, innermost conjugation first.
    for (int t = 1; t <= i - 1; ++t) {
      copy = qma::embed_at(rep.pair.f.R, t + 1, total) * copy *
             qma::embed_at(rep.pair.f.R_inv, t + 1, total);
    }
    s = s * copy;
  }
  const auto m = qma::to_matrix(s * qma::embed_at(x, 2, total));
  const auto D = qma::to_matrix(rep.pair.r.D);
  std::size_t block = 1;
  for (int i = 0; i < n; ++i) block *= static_cast<std::size_t>(k);
  std::vector<Rational> out(static_cast<std::size_t>(k * k));
  const std::size_t N = static_cast<std::size_t>(k) * block;
  for (std::size_t a = 0; a < static_cast<std::size_t>(k); ++a) {
    for (std::size_t b = 0; b < static_cast<std::size_t>(k); ++b) {
      Rational acc(0);
      for (std::size_t u = 0; u < block; ++u) {
        for (std::size_t v = 0; v < block; ++v) {
          // weight ∏ D[u_i][v_i] times entry ((a,v),(b,u))
          Rational w(1);
          std::size_t uu = u, vv = v;
          for (int i = 0; i < n; ++i) {
            w *= D.a[(uu % k) * k + (vv % k)];
            uu /= k;
            vv /= k;
          }
          if (w == 0) continue;
          acc += w * m.a[(a * block + v) * N + b * block + u];
        }
      }
      out[a * k + b] = acc;
    }
  }
  return qma::from_dense(k, 1, out);
}

}  // namespace

TEST_CASE("representation images at k=3") {
  Setup s(3, false);
  auto rep = qma::make_rep(s.pair, RepTag::alpha_plus, s.log);
  CHECK(rep.M_image == s.r.R * qma::permutation_flip<Rational>(3));
  auto beta = qma::make_rep(s.pair, RepTag::beta, s.log);
  CHECK(beta.M_image == qma::identity<Rational>(3, 2));
  CHECK(qma::string_image(beta, 2) == qma::identity<Rational>(3, 3));
  auto minus = qma::make_rep(s.pair, RepTag::alpha_minus, s.log);
  CHECK(qma::string_image(minus, 1) == minus.M_image);
  CHECK(s.log.failures() == 0);

  Setup rr(3, true);
  auto triv = qma::make_rep(rr.pair, RepTag::alpha_minus, rr.log);
  CHECK(triv.M_image == qma::identity<Rational>(3, 2));
  CHECK(rr.log.failures() == 0);
}

TEST_CASE("ch against a dense oracle") {
  for (bool refl : {false, true}) {
    Setup s(3, refl);
    for (auto tag : {RepTag::alpha_plus, RepTag::alpha_minus, RepTag::beta}) {
      auto rep = qma::make_rep(s.pair, tag, s.log);
      CHECK(qma::ch_image(rep, qma::identity<Rational>(3, 1)) ==
            dense_ch(rep, qma::identity<Rational>(3, 1)));
      CHECK(qma::ch_image(rep, s.t.K) == dense_ch(rep, s.t.K));
      CHECK(qma::ch_image(rep, s.t.a[3]) == dense_ch(rep, s.t.a[3]));
      CHECK(qma::ch_image(rep, s.t.a[4]).is_zero());
      const auto i3 = qma::identity<Rational>(3, 3);
      CHECK(qma::ch_image(rep, i3) == dense_ch(rep, i3));
      const auto i2 = qma::identity<Rational>(3, 2);
      CHECK(qma::ch_image(rep, i2) == dense_ch(rep, i2));
    }
  }
  Setup s(3, false);
  auto rep = qma::make_rep(s.pair, RepTag::alpha_plus, s.log);
  CHECK_THROWS_AS(qma::ch_image(rep, qma::identity<Rational>(2, 1)), qma::ShapeMismatch);
}

TEST_CASE("characteristic images, structure matrices and theorems") {
  for (int k : {3, 4}) {
    for (bool refl : {false, true}) {
      CAPTURE(k);
      CAPTURE(refl);
      Setup s(k, refl);
      qma::CheckLog<Rational> log("qmarep");
      const auto sm = qma::structure_matrices(s.pair, s.t, log);
      for (auto tag : {RepTag::alpha_plus, RepTag::alpha_minus, RepTag::beta}) {
        auto rep = qma::make_rep(s.pair, tag, log);
        const auto im = qma::char_images(rep, s.t, log);
        qma::verify_images(rep, im, sm, s.p, log);
        qma::minv_image(rep, im, sm, s.p, log);
        qma::verify_reciprocal(im, k, log);
        qma::verify_det_commutation(rep, im, sm, log);
        const auto res = qma::verify_resolution(im, sm, s.p, log);
        CHECK(res.ell == (k + 1) / 2);
        qma::verify_string_forms(rep, im, s.t, 3, log);
        if (rep.is_alpha()) {
          // Independent restatement of the g image in terms of G⁻¹.
          CHECK(im.g == (s.p.mu * s.p.mu) * sm.G_inv);
        }
      }
      for (const auto& rec : log.records()) {
        CHECK_MESSAGE(rec.status != qma::Status::fail, rec.name << " " << rec.witness);
      }
      if (refl) {
        CHECK(sm.G == qma::identity<Rational>(k, 1));
        const Rational sign = (k % 2 == 1) ? Rational(1) : Rational(-1);
        CHECK(sm.O == sign * qma::identity<Rational>(k, 1));
      }
    }
  }
}

TEST_CASE("tensor representation and group-like elements") {
  Setup s(3, false);
  qma::CheckLog<Rational> log("tensor");
  auto a = qma::make_rep(s.pair, RepTag::alpha_plus, log);
  auto b = qma::make_rep(s.pair, RepTag::alpha_minus, log);
  auto ab = qma::tensor_rep(a, b, log);
  auto aa = qma::tensor_rep(a, a, log);
  CHECK(ab.rep_legs == 2);
  const auto ia = qma::char_images(a, s.t, log);
  const auto ib = qma::char_images(b, s.t, log);
  qma::verify_group_like(qma::char_images(ab, s.t, log), ia, ib, s.p, log);
  qma::verify_group_like(qma::char_images(aa, s.t, log), ia, ia, s.p, log);
  for (const auto& rec : log.records()) {
    CHECK_MESSAGE(rec.status != qma::Status::fail, rec.name << " " << rec.witness);
  }
  Setup rr(3, true);
  auto x = qma::make_rep(rr.pair, RepTag::alpha_plus, log);
  CHECK_THROWS_AS(qma::tensor_rep(x, x, log), qma::NotFlipPair);
}

TEST_CASE("singular contraction is rejected") {
  Setup s(3, false);
  auto rep = qma::make_rep(s.pair, RepTag::alpha_plus, s.log);
  rep.tag = RepTag::beta;
  rep.M_image = Op(3, 2);
  CHECK_THROWS_AS(qma::char_images(rep, s.t, s.log), qma::SingularContraction);
}

TEST_CASE("float shadow at k=3") {
  Setup s(3, false);
  const auto pd = qma::convert_params<double>(s.p);
  const auto rd = qma::skew_invert(qma::convert<double>(s.r.R), 1e-9);
  const auto bd = qma::bmw_certify(rd, pd, 1e-9);
  const auto pair = qma::make_pair(rd, qma::flip<double>(3), 1e-9);
  qma::CheckLog<double> log("float", 1e-8);
  const auto t = qma::build_towers(rd, bd, {4, 1, 2}, log);
  const auto sm = qma::structure_matrices(pair, t, log);
  auto rep = qma::make_rep(pair, RepTag::alpha_plus, log);
  const auto im = qma::char_images(rep, t, log);
  qma::verify_images(rep, im, sm, pd, log);
  qma::verify_reciprocal(im, 3, log);
  CHECK(log.failures() == 0);
}
