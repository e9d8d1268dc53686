#pragma once

#include <string>

#include "qma/field.hpp"

namespace qma {

// Deformation parameters of an O(k)-type BMW Yang–Baxter matrix. Everything
// is expressed through the base parameter v with q = v², so half-integer
// powers of q stay exactly representable.
template <class F>
struct DeformParams {
  int k = 0;
  F v;
  F q;
  F mu;   // q^(1-k)
  F eta;  // (q-mu)(1/q+mu) / (mu (q-1/q))
  int n_max = 0;

  int ell() const { return k / 2; }
  // Tr_R I = mu * eta.
  F trace_identity() const { return mu * eta; }
};

// Validated exact parameters. n_max <= 0 selects the default 2k+2.
// Throws ForbiddenParameter naming the violated restriction.
DeformParams<Rational> make_params(int k, const Rational& v, int n_max = 0);

// The same point evaluated in another field (double for the shadow run).
template <class F>
DeformParams<F> convert_params(const DeformParams<Rational>& p) {
  using T = FieldTraits<F>;
  return DeformParams<F>{p.k,
                         T::from_rational(p.v),
                         T::from_rational(p.q),
                         T::from_rational(p.mu),
                         T::from_rational(p.eta),
                         p.n_max};
}

// i_q = (q^i - q^-i)/(q - q^-1).
template <class F>
F qnum(const DeformParams<F>& p, int i) {
  return (ipow(p.q, i) - ipow(p.q, -i)) / (p.q - F(1) / p.q);
}

// 1_q 2_q ... i_q, with 0_q! = 1.
template <class F>
F qfact(const DeformParams<F>& p, int i) {
  F out(1);
  for (int j = 1; j <= i; ++j) out *= qnum(p, j);
  return out;
}

// R-trace eigenvalue of the i-th q-antisymmetrizer:
//   -q^(i-1) (mu + q^(1-2i)) (mu^2 - q^(4-2i)) / ((mu + q^(3-2i)) (q^i - q^-i))
template <class F>
F delta(const DeformParams<F>& p, int i);

std::string describe(const DeformParams<Rational>& p);

}  // namespace qma
