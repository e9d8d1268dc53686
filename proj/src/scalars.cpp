#include "qma/scalars.hpp"

#include <sstream>

#include "qma/errors.hpp"

namespace qma {

namespace {

void forbid_if(bool bad, const std::string& what) {
  if (bad) throw ForbiddenParameter("forbidden parameter: " + what);
}

}  // namespace

DeformParams<Rational> make_params(int k, const Rational& v, int n_max) {
  forbid_if(k < 2, "k must be at least 2 (got " + std::to_string(k) + ")");
  forbid_if(sgn(v) == 0, "v must be nonzero");
  if (n_max <= 0) n_max = 2 * k + 2;

  DeformParams<Rational> p;
  p.k = k;
  p.v = v;
  p.v.canonicalize();
  p.q = p.v * p.v;
  p.n_max = n_max;
  const Rational& q = p.q;
  const Rational one(1);

  forbid_if(q == one || q == -one, "q must not be +-1 (q = " + to_string(q) + ")");
  p.mu = ipow(q, 1 - k);
  const Rational& mu = p.mu;
  forbid_if(mu == q, "mu must differ from q");
  forbid_if(mu == -one / q, "mu must differ from -1/q");

  for (int j = 2; j <= n_max; ++j) {
    const std::string at = " (j = " + std::to_string(j) + ")";
    forbid_if(ipow(q, 2 * j) == one, "q^(2j) = 1" + at);
    forbid_if(mu == -ipow(q, 3 - 2 * j), "mu = -q^(3-2j)" + at);
    forbid_if(mu == ipow(q, 2 * j - 3), "mu = q^(2j-3)" + at);
  }
  for (int i = 1; i <= k; ++i) {
    const std::string at = " (i = " + std::to_string(i) + ")";
    forbid_if(ipow(q, 2 * i) == one, "q^(2i) = 1" + at);
    forbid_if(mu == -ipow(q, 1 - 2 * i), "mu = -q^(1-2i)" + at);
  }
  p.eta = (q - mu) * (one / q + mu) / (mu * (q - one / q));
  return p;
}

template <class F>
F delta(const DeformParams<F>& p, int i) {
  const F& q = p.q;
  const F& mu = p.mu;
  const F den = (mu + ipow(q, 3 - 2 * i)) * (ipow(q, i) - ipow(q, -i));
  if (FieldTraits<F>::is_zero(den)) {
    throw ForbiddenParameter("delta_" + std::to_string(i) + " has a vanishing denominator");
  }
  return -ipow(q, i - 1) * (mu + ipow(q, 1 - 2 * i)) * (mu * mu - ipow(q, 4 - 2 * i)) / den;
}

template Rational delta(const DeformParams<Rational>&, int);
template double delta(const DeformParams<double>&, int);

std::string describe(const DeformParams<Rational>& p) {
  std::ostringstream os;
  os << "k=" << p.k << " v=" << to_string(p.v) << " q=" << to_string(p.q)
     << " mu=" << to_string(p.mu) << " eta=" << to_string(p.eta) << " n_max=" << p.n_max;
  return os.str();
}

}  // namespace qma
