#include "qma/idempotents.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "qma/errors.hpp"

namespace qma {

namespace {

std::string idx(const char* base, int i) { return std::string(base) + "[" + std::to_string(i) + "]"; }

template <class F>
std::vector<int> leg_range(int from, int to) {
  std::vector<int> v(static_cast<std::size_t>(to - from + 1));
  std::iota(v.begin(), v.end(), from);
  return v;
}

template <class F>
bool agrees(const LegOperator<F>& x, const LegOperator<F>& y, double tol) {
  const auto d = compare(x, y);
  return FieldTraits<F>::exact ? d.count == 0 : d.max_abs <= tol;
}

// Shared checks for an idempotent family member.
template <class F>
void idempotent_checks(const std::string& name, const LegOperator<F>& x, CheckLog<F>& log,
                       bool record_rank) {
  log.equal(name + " is idempotent", "idempotent", x * x, x);
  const auto r = static_cast<long long>(rank(x, log.tolerance()));
  const F tr = full_trace(x);
  log.scalar_equal("trace of " + name + " equals its rank", "idempotent", tr, F(static_cast<long>(r)));
  if (record_rank) log.note("rank " + name, "observation", std::to_string(r));
}

template <class F>
LegOperator<F> antisym_step(const IdempotentTower<F>& t, const std::vector<LegOperator<F>>& fam,
                            int i, int sign, bool shifted) {
  const auto& p = t.params;
  const F x = sign < 0 ? ipow(p.q, -2 * i) : ipow(p.q, 2 * i);
  const F coef = (sign < 0 ? ipow(p.q, i) : ipow(p.q, -i)) / qnum(p, i + 1);
  const auto b = baxterized_local(t.R, t.K, p, sign, x);
  const auto X = embed_at(fam[static_cast<std::size_t>(i)], shifted ? 2 : 1, i + 1);
  const auto Y = apply_right(X, b, shifted ? 1 : i);
  return coef * (Y * X);
}

}  // namespace

template <class F>
LegOperator<F> baxterized_local(const LegOperator<F>& R, const LegOperator<F>& K,
                                const DeformParams<F>& p, int sign, const F& x) {
  const F den = sign > 0 ? F(p.mu - x / p.q) : F(p.mu + p.q * x);
  if (FieldTraits<F>::is_zero(den)) {
    throw ForbiddenParameter("baxterized element has a pole at x = " + FieldTraits<F>::format(x));
  }
  const F a = (x - F(1)) / (p.q - F(1) / p.q);
  const F b = p.mu * (x - F(1)) / den;
  return identity<F>(R.dim(), 2) + a * R + b * K;
}

template <class F>
LegOperator<F> baxterized(const IdempotentTower<F>& t, int sign, const F& x, int i, int strands) {
  return embed_at(baxterized_local(t.R, t.K, t.params, sign, x), i, strands);
}

template <class F>
IdempotentTower<F> build_towers(const YangBaxterData<F>& data, const BmwCertificate<F>& bmw,
                                TowerDepths depths, CheckLog<F>& log) {
  IdempotentTower<F> t{bmw.params, data.R, bmw.K, data.D, {}, {}, {}};
  const int k = data.dim();
  const int n = depths.n;
  const int s_max = depths.s_max < 0 ? n : std::min(depths.s_max, n);
  const double tol = log.tolerance();
  const auto& p = t.params;
  if (std::max(n, 2 * depths.m) > p.n_max) {
    throw ForbiddenParameter("tower depth exceeds the validated strand count n_max = " +
                             std::to_string(p.n_max));
  }

  t.a.push_back(scalar_operator<F>(k, F(1)));
  t.s.push_back(scalar_operator<F>(k, F(1)));
  t.a.push_back(identity<F>(k, 1));
  t.s.push_back(identity<F>(k, 1));
  for (int i = 1; i < n; ++i) {
    auto first = antisym_step(t, t.a, i, -1, false);
    const auto second = antisym_step(t, t.a, i, -1, true);
    const bool same = agrees(first, second, tol);
    log.holds("two recursions for a[" + std::to_string(i + 1) + "] agree", "a^k", same,
              compare(first, second).witness, compare(first, second).max_abs);
    if (!same) throw TowerMismatch("the two recursions for a^(" + std::to_string(i + 1) + ") differ");
    t.a.push_back(std::move(first));
  }
  for (int i = 1; i < s_max; ++i) {
    auto first = antisym_step(t, t.s, i, +1, false);
    const auto second = antisym_step(t, t.s, i, +1, true);
    const bool same = agrees(first, second, tol);
    log.holds("two recursions for s[" + std::to_string(i + 1) + "] agree", "s^k", same,
              compare(first, second).witness, compare(first, second).max_abs);
    if (!same) throw TowerMismatch("the two recursions for s^(" + std::to_string(i + 1) + ") differ");
    t.s.push_back(std::move(first));
  }

  const F inv_eta = F(1) / p.eta;
  t.c.push_back(scalar_operator<F>(k, F(1)));
  if (depths.m >= 1) t.c.push_back(inv_eta * t.K);
  for (int i = 1; i < depths.m; ++i) {
    const int legs = 2 * i + 2;
    const auto U = embed_at(t.c[static_cast<std::size_t>(i)], 2, legs);
    auto c_next = apply_right(apply_right(U, t.K, 1), t.K, 2 * i + 1) * U;
    t.c.push_back(std::move(c_next));
  }
  for (int i = 1; i <= depths.m; ++i) {
    const int legs = 2 * i;
    const auto& ci = t.c[static_cast<std::size_t>(i)];
    const auto prev_up = embed_at(t.c[static_cast<std::size_t>(i - 1)], 2, legs);
    std::vector<Placed<F>> word;
    for (int j = 2 * i - 1; j >= i + 1; --j) word.push_back({&t.K, j});
    for (int j = 1; j <= i; ++j) word.push_back({&t.K, j});
    const auto alt2 = inv_eta * apply_word_right<F>(prev_up, word);
    std::vector<Placed<F>> odd;
    for (int j = 1; j <= i; ++j) odd.push_back({&t.K, 2 * j - 1});
    const F pre3 = i % 2 == 1 ? inv_eta : F(1);
    const auto alt3 = pre3 * (apply_word_right<F>(prev_up, odd) * prev_up);
    const bool ok2 = agrees(ci, alt2, tol);
    const bool ok3 = agrees(ci, alt3, tol);
    log.holds(idx("contractor recursions agree (second form) for c", i), "kappa-i2", ok2,
              compare(ci, alt2).witness, compare(ci, alt2).max_abs);
    log.holds(idx("contractor recursions agree (third form) for c", i), "kappa-i3", ok3,
              compare(ci, alt3).witness, compare(ci, alt3).max_abs);
    if (!ok2 || !ok3) throw TowerMismatch("contractor recursions differ at 2i = " + std::to_string(legs));
  }

  for (int i = 2; i <= n; ++i) {
    const auto& ai = t.a[static_cast<std::size_t>(i)];
    idempotent_checks(idx("a", i), ai, log, true);
    const auto below = embed_at(t.a[static_cast<std::size_t>(i - 1)], 1, i);
    log.equal(idx("absorption a a^(i-1) = a for a", i), "aj-am", ai * below, ai);
    log.equal(idx("absorption a^(i-1) a = a for a", i), "aj-am", below * ai, ai);
  }
  for (int i = 2; i <= s_max; ++i) {
    const auto& si = t.s[static_cast<std::size_t>(i)];
    idempotent_checks(idx("s", i), si, log, true);
    const auto below = embed_at(t.s[static_cast<std::size_t>(i - 1)], 1, i);
    log.equal(idx("absorption s s^(i-1) = s for s", i), "s^k", si * below, si);
    log.equal(idx("absorption s^(i-1) s = s for s", i), "s^k", below * si, si);
  }
  for (int i = 1; i <= depths.m; ++i) {
    idempotent_checks(idx("c", i), t.c[static_cast<std::size_t>(i)], log, false);
  }
  return t;
}

template <class F>
void certify_contractors(const IdempotentTower<F>& t, const IdempotentTower<F>& tf,
                         const CompatiblePair<F>& pair, CheckLog<F>& log) {
  const auto& p = t.params;
  const int k = t.dim();
  const int m = static_cast<int>(t.c.size()) - 1;
  const F ratio = p.mu / p.eta;
  const double tol = log.tolerance();

  for (int i = 1; i <= m; ++i) {
    const auto& ci = t.c[static_cast<std::size_t>(i)];
    const int legs = 2 * i;
    log.count_equal(idx("rank c", i) + " = 1", "trace-c2i",
                    static_cast<long long>(rank(ci, tol)), 1);

    const std::vector<int> last{legs};
    const auto prev_up = embed_at(t.c[static_cast<std::size_t>(i - 1)], 2, legs - 1);
    log.equal(idx("Tr_R,(2i) c", i) + " = mu/eta c[i-1] shifted", "trace-c2i",
              weighted_trace(ci, last, t.D), ratio * prev_up);
    const auto upper = leg_range<F>(i + 1, legs);
    log.equal(idx("Tr_R,(i+1..2i) c", i) + " = (mu/eta)^i I", "traces-c2i",
              weighted_trace(ci, upper, t.D), ipow(ratio, i) * identity<F>(k, i));

    const F mu2i = ipow(p.mu, legs);
    log.equal(idx("prod D_R c", i) + " = mu^(2i) c", "spec-c1",
              d_product(t.D, legs) * ci, mu2i * ci);
    log.equal(idx("prod D_{R_F} c", i) + " = mu^(2i) c", "spec-c2",
              d_product(pair.twisted.D, legs) * ci, mu2i * ci);

    for (int j = 1; j <= i; ++j) {
      const auto cj = embed_at(t.c[static_cast<std::size_t>(j)], i - j + 1, legs);
      const std::string tag = idx("c", i) + " with c[" + std::to_string(j) + "] shifted";
      log.equal("absorption " + tag + " (right)", "idemp-c1", ci * cj, ci);
      log.equal("absorption " + tag + " (left)", "idemp-c1", cj * ci, ci);
    }
    for (int j = 1; j <= i - 1; ++j) {
      const std::string tag = idx("c", i) + " R_" + std::to_string(j) + " = c R_" +
                              std::to_string(legs - j);
      log.equal("reflection " + tag, "idemp-c2", apply_right(ci, t.R, j),
                apply_right(ci, t.R, legs - j));
      log.equal("reflection (left) " + tag, "idemp-c2", apply_left(t.R, j, ci),
                apply_left(t.R, legs - j, ci));
    }

    const auto z = z_string(pair.f.R, legs);
    log.equal(idx("Z-conjugation of c", i), "Z-ac2", ci * z,
              z * tf.c[static_cast<std::size_t>(i)]);
  }

  const int n = static_cast<int>(t.a.size()) - 1;
  for (int i = 2; i <= std::min(n, k); ++i) {
    const auto z = z_string(pair.f.R, i);
    log.equal(idx("Z-conjugation of a", i), "Z-ac1", t.a[static_cast<std::size_t>(i)] * z,
              z * tf.a[static_cast<std::size_t>(i)]);
  }

  for (int j = 1; j <= std::min(m, n); ++j) {
    const auto& cj = t.c[static_cast<std::size_t>(j)];
    const auto& aj = t.a[static_cast<std::size_t>(j)];
    log.equal(idx("a[j] shifted by j times c[2j] equals a[j] c[2j], j", j), "noca1",
              apply_left(aj, j + 1, cj), apply_left(aj, 1, cj));
  }

  certify_z_strings(pair, std::max(std::min(n, k), 2 * m), log);
}

template <class F>
F qdim_closed_form(const DeformParams<F>& p, int i) {
  const int k = p.k;
  const F& q = p.q;
  return ipow(q, -k * i) * (ipow(q, 2 * i) + ipow(q, k)) / (F(1) + ipow(q, k)) * qfact(p, k) /
         (qfact(p, i) * qfact(p, k - i));
}

template <class F>
void certify_spectral(const IdempotentTower<F>& t, const IdempotentTower<F>& tf,
                      const CompatiblePair<F>& pair, CheckLog<F>& log) {
  const auto& p = t.params;
  const int k = p.k;
  const int n = static_cast<int>(t.a.size()) - 1;
  if (n < k + 1) {
    log.skip("spectral identities", "spec1", "antisymmetrizer tower shorter than k+1");
    return;
  }
  F running(1);
  for (int i = 1; i <= k; ++i) {
    const auto& ai = t.a[static_cast<std::size_t>(i)];
    const std::vector<int> last{i};
    const F di = delta(p, i);
    running *= di;
    log.equal(idx("Tr_R,(i) a", i) + " = delta_i a[i-1]", "spec1", weighted_trace(ai, last, t.D),
              di * t.a[static_cast<std::size_t>(i - 1)]);
    const auto all = leg_range<F>(1, i);
    const F full = weighted_trace(ai, all, t.D).scalar();
    log.scalar_equal(idx("Tr_R,(1..i) a", i) + " = product of delta_j", "qdim-O(k)", full,
                     running);
    log.scalar_equal(idx("Tr_R,(1..i) a", i) + " = closed form", "qdim-O(k)", full,
                     qdim_closed_form(p, i));
  }
  log.scalar_equal("Tr_R,(1..k) a[k] = q^(k(1-k))", "qdim-O(k)", running, ipow(p.q, k * (1 - k)));

  const auto& ak = t.a[static_cast<std::size_t>(k)];
  const F top = ipow(p.q, k * (1 - k));
  log.equal("prod D_R a[k] = q^(k(1-k)) a[k]", "spec-a1", d_product(t.D, k) * ak, top * ak);
  log.equal("prod D_{R_F} a[k] = q^(k(1-k)) a[k]", "spec-a2",
            d_product(pair.twisted.D, k) * ak, top * ak);
  if (tf.a.size() > static_cast<std::size_t>(k)) {
    const auto& fk = tf.a[static_cast<std::size_t>(k)];
    log.equal("prod D_{R_F} a_F[k] = q^(k(1-k)) a_F[k]", "spec-a1", d_product(tf.D, k) * fk, top * fk);
  }

  const F qq = p.q - F(1) / p.q;
  const F inv_mu = F(1) / p.mu;
  for (int j = 1; j <= k; ++j) {
    const int legs = j + 1;
    const auto up = embed_at(t.a[static_cast<std::size_t>(j)], 2, legs);
    const auto plain = embed_at(t.a[static_cast<std::size_t>(j)], 1, legs);
    const auto bax = baxterized_local(t.R, t.K, p, -1, ipow(p.q, -2 * j));
    const auto lhs = (qnum(p, j) * qnum(p, j)) * (up * plain * up);
    const auto sig = apply_right(up, bax, 1) * up;
    const auto kap = apply_right(up, t.K, 1) * up;
    const F coef = inv_mu * ipow(p.q, -2 * j + 2) * qq * qq * qnum(p, j - 1) * qnum(p, j) /
                   ((inv_mu * ipow(p.q, 1 - 2 * j) + F(1)) * (inv_mu * ipow(p.q, 3 - 2 * j) + F(1)));
    log.equal(idx("a^(j) shifted sandwich expansion, j", j), "aj1ajaj1", lhs,
              up + (ipow(p.q, j) * qnum(p, j - 1)) * sig + coef * kap);
    if (j == k) {
      const F c2 = ipow(p.q, 1 - k) * qq * qq * qnum(p, k) * qnum(p, k - 1) /
                   ((F(1) + ipow(p.q, -k)) * (F(1) + ipow(p.q, 2 - k)));
      log.equal("vanishing condition in sandwich form", "vanish-2", up,
                (qnum(p, k) * qnum(p, k)) * (up * plain * up) - c2 * kap);
    }
  }
}

template <class F>
HeightResult detect_height(const IdempotentTower<F>& t, double tol) {
  HeightResult h;
  const int n = static_cast<int>(t.a.size()) - 1;
  h.ranks.assign(static_cast<std::size_t>(n + 1), 0);
  for (int i = 1; i <= n; ++i) {
    h.ranks[static_cast<std::size_t>(i)] =
        static_cast<long long>(rank(t.a[static_cast<std::size_t>(i)], tol));
  }
  for (int k = 2; k < n; ++k) {
    if (h.ranks[static_cast<std::size_t>(k)] == 0) break;
    const auto up = embed_at(t.a[static_cast<std::size_t>(k)], 2, k + 1);
    const auto bax = baxterized_local(t.R, t.K, t.params, -1, ipow(t.params.q, -2 * k));
    const auto combo = apply_right(up, bax, 1) * up;
    const auto d = compare(combo, LegOperator<F>(combo.dim(), combo.legs()));
    const bool vanishes = FieldTraits<F>::exact ? d.count == 0 : d.max_abs <= tol;
    if (vanishes) {
      h.height = k;
      h.rank_one = h.ranks[static_cast<std::size_t>(k)] == 1;
      return h;
    }
  }
  throw HeightNotFound("no height found up to " + std::to_string(n - 1) + " strands");
}

#define QMA_INSTANTIATE_IDEMPOTENTS(F)                                                        \
  template LegOperator<F> baxterized_local(const LegOperator<F>&, const LegOperator<F>&,      \
                                           const DeformParams<F>&, int, const F&);            \
  template LegOperator<F> baxterized(const IdempotentTower<F>&, int, const F&, int, int);     \
  template IdempotentTower<F> build_towers(const YangBaxterData<F>&, const BmwCertificate<F>&, \
                                           TowerDepths, CheckLog<F>&);                        \
  template void certify_contractors(const IdempotentTower<F>&, const IdempotentTower<F>&,     \
                                    const CompatiblePair<F>&, CheckLog<F>&);                  \
  template void certify_spectral(const IdempotentTower<F>&, const IdempotentTower<F>&,        \
                                 const CompatiblePair<F>&, CheckLog<F>&);                     \
  template HeightResult detect_height(const IdempotentTower<F>&, double);                     \
  template F qdim_closed_form(const DeformParams<F>&, int);

QMA_INSTANTIATE_IDEMPOTENTS(Rational)
QMA_INSTANTIATE_IDEMPOTENTS(double)

}  // namespace qma
