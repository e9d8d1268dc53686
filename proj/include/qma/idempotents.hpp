#pragma once

#include <vector>

#include "qma/report.hpp"
#include "qma/ybkit.hpp"

namespace qma {

// Images under ρ_R of the q-antisymmetrizers a^(i), q-symmetrizers s^(i)
// and contractors c^(2i). a[i], s[i] act on i legs (a[0], s[0] are the
// 0-leg unit); c[i] acts on 2i legs.
template <class F>
struct IdempotentTower {
  DeformParams<F> params;
  LegOperator<F> R;
  LegOperator<F> K;
  LegOperator<F> D;
  std::vector<LegOperator<F>> a;
  std::vector<LegOperator<F>> s;
  std::vector<LegOperator<F>> c;

  int dim() const { return R.dim(); }
};

// 1 + (x-1)/(q-1/q) R + μ(x-1)/(μ ∓ q^(∓1) x) K on two legs; sign = ±1.
// Throws ForbiddenParameter at a pole.
template <class F>
LegOperator<F> baxterized_local(const LegOperator<F>& R, const LegOperator<F>& K,
                                const DeformParams<F>& p, int sign, const F& x);

// The same element placed at legs (i, i+1) of `strands` legs.
template <class F>
LegOperator<F> baxterized(const IdempotentTower<F>& t, int sign, const F& x, int i, int strands);

struct TowerDepths {
  int n = 0;        // a[1..n]
  int m = 0;        // c[1..m]
  int s_max = -1;   // s[1..s_max]; negative means n
};

// Builds the three families, cross-checking every alternative recursion and
// recording idempotency, absorption and trace = rank checks into `log`.
// Throws TowerMismatch when two recursions disagree.
template <class F>
IdempotentTower<F> build_towers(const YangBaxterData<F>& data, const BmwCertificate<F>& bmw,
                                TowerDepths depths, CheckLog<F>& log);

// Rank-one contractor identities, reflection/absorption, Z-conjugation for
// a and c, and the a/c shift lemma. `tf` is the tower of the twisted matrix.
template <class F>
void certify_contractors(const IdempotentTower<F>& t, const IdempotentTower<F>& tf,
                         const CompatiblePair<F>& pair, CheckLog<F>& log);

// R-trace recursion of a^(i), the closed-form quantum dimensions, the
// D-eigenvalue of a^(k) for R and R_F, and the a^(j)↑1 a^(j) a^(j)↑1
// expansion with its vanishing form at j = k.
template <class F>
void certify_spectral(const IdempotentTower<F>& t, const IdempotentTower<F>& tf,
                      const CompatiblePair<F>& pair, CheckLog<F>& log);

struct HeightResult {
  int height = 0;
  bool rank_one = false;
  std::vector<long long> ranks;  // ranks[i] = rank a[i], i = 1..n
};

// Least k ≥ 2 with a[2..k] nonzero and a^(k)↑1 σ⁻₁(q^(-2k)) a^(k)↑1 = 0.
// Throws HeightNotFound if none exists within the built range.
template <class F>
HeightResult detect_height(const IdempotentTower<F>& t, double tol = 0.0);

// q^(-ki) (q^(2i)+q^k)/(1+q^k) · k_q!/(i_q!(k-i)_q!)
template <class F>
F qdim_closed_form(const DeformParams<F>& p, int i);

}  // namespace qma
