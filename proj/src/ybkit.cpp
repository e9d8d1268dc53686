#include "qma/ybkit.hpp"

#include <array>
#include <cstdlib>
#include <string>

#include "qma/dense.hpp"
#include "qma/errors.hpp"

namespace qma {

namespace {

template <class F>
using Entries = std::vector<typename LegOperator<F>::Entry>;

// Twice the weight ρ_i of the standard O(k) basis vector i (0-based), so
// that the correction block needs only integer powers of v.
int twice_rho(int i, int k) {
  const int ip = k - 1 - i;
  if (i < ip) return k - 2 * (i + 1);
  if (i > ip) return -(k - 2 * (ip + 1));
  return 0;
}

template <class F>
LegOperator<F> three(const LegOperator<F>& op, int pos) {
  return embed_at(op, pos, 3);
}

template <class F>
LegOperator<F> psi_from_system(const LegOperator<F>& R) {
  const int k = R.dim();
  const std::size_t n = static_cast<std::size_t>(k) * static_cast<std::size_t>(k);
  const auto kk = static_cast<Index>(k);
  // Unknowns Ψ^{xc}_{bc'} at (x,b) for each fixed (c,c'):
  //   Σ_{x,b} R^{ab}_{a'x} Ψ^{xc}_{bc'} = δ^a_{c'} δ^c_{a'}.
  DenseMatrix<F> a(n);
  for (const auto& e : R.entries()) {
    const Index ra = e.row / kk;
    const Index rb = e.row % kk;
    const Index ca = e.col / kk;
    const Index cx = e.col % kk;
    a(ra * kk + ca, cx * kk + rb) = e.value;
  }
  std::vector<F> rhs(n * n, F(0));
  for (Index x = 0; x < kk; ++x) {
    for (Index y = 0; y < kk; ++y) {
      // row (a, a') = (x, y), column (c, c') = (y, x)
      rhs[(x * kk + y) * n + (y * kk + x)] = F(1);
    }
  }
  auto sol = dense_solve(std::move(a), std::move(rhs), n);
  if (!sol) throw NotSkewInvertible("the skew-inverse system is singular");
  Entries<F> e;
  for (Index x = 0; x < kk; ++x) {
    for (Index b = 0; b < kk; ++b) {
      for (Index c = 0; c < kk; ++c) {
        for (Index cp = 0; cp < kk; ++cp) {
          const F& v = (*sol)[(x * kk + b) * n + (c * kk + cp)];
          if (!FieldTraits<F>::is_zero(v)) e.push_back({x * kk + c, b * kk + cp, v});
        }
      }
    }
  }
  return LegOperator<F>(k, 2, std::move(e));
}

template <class F>
bool within(const LegOperator<F>& a, const LegOperator<F>& b, double tol) {
  const auto d = compare(a, b);
  return FieldTraits<F>::exact ? d.count == 0 : d.max_abs <= tol;
}

}  // namespace

template <class F>
LegOperator<F> transcribe_standard_O(const DeformParams<F>& p) {
  const int k = p.k;
  const F& q = p.q;
  const F qq = q - F(1) / q;
  auto key = [k](int i, int j) { return static_cast<Index>(i * k + j); };
  Entries<F> frt;
  for (int i = 0; i < k; ++i) {
    const int ip = k - 1 - i;
    for (int j = 0; j < k; ++j) {
      if (i == j) {
        frt.push_back({key(i, i), key(i, i), i != ip ? q : F(1)});
      } else {
        frt.push_back({key(i, j), key(i, j), j == ip ? F(1) / q : F(1)});
      }
      if (i > j) {
        const int jp = k - 1 - j;
        frt.push_back({key(i, j), key(j, i), qq});
        frt.push_back({key(i, ip), key(j, jp),
                       -qq * ipow(p.v, twice_rho(i, k) - twice_rho(j, k))});
      }
    }
  }
  const LegOperator<F> r_frt(k, 2, std::move(frt));
  return permutation_flip<F>(k) * r_frt;
}

template <class F>
LegOperator<F> standard_O(const DeformParams<F>& p, double tol) {
  LegOperator<F> R = transcribe_standard_O(p);
  try {
    const auto data = skew_invert(R, tol);
    bmw_certify(data, p, tol);
  } catch (const ConstructionError& e) {
    throw ConstructionInvalid(std::string("standard O(k) transcription rejected: ") + e.what());
  }
  return R;
}

template <class F>
YangBaxterData<F> flip(int dim) {
  const auto P = permutation_flip<F>(dim);
  const auto I = identity<F>(dim, 1);
  return YangBaxterData<F>{P, P, P, P, I, I, I, I};
}

template <class F>
YangBaxterData<F> skew_invert(const LegOperator<F>& R, double tol) {
  if (R.legs() != 2) throw ShapeMismatch("skew_invert expects a two-leg operator");
  YangBaxterData<F> d;
  d.R = R;
  auto inv = try_inverse(R);
  if (!inv) throw ConstructionInvalid("R is not invertible");
  d.R_inv = std::move(*inv);
  const int k = R.dim();
  const std::array<int, 1> first{1};
  const std::array<int, 1> second{2};

  d.psi = psi_from_system(R);
  const auto P = permutation_flip<F>(k);
  if (!within(plain_trace(three(d.psi, 1) * three(R, 2), second), P, tol)) {
    throw NotSkewInvertible("Tr_2 Psi_1 R_2 differs from P for the solved Psi");
  }
  d.C = plain_trace(d.psi, first);
  d.D = plain_trace(d.psi, second);

  try {
    d.psi_inv_side = psi_from_system(d.R_inv);
  } catch (const NotSkewInvertible&) {
    throw NotStrict("R^-1 is not skew invertible");
  }
  d.C_inv_side = plain_trace(d.psi_inv_side, first);
  d.D_inv_side = plain_trace(d.psi_inv_side, second);
  const auto I = identity<F>(k, 1);
  if (!within(d.C * d.D_inv_side, I, tol) || !within(d.D * d.C_inv_side, I, tol)) {
    throw NotStrict("C_R D_{R^-1} or D_R C_{R^-1} differs from I");
  }
  return d;
}

template <class F>
void certify_yang_baxter(const YangBaxterData<F>& d, CheckLog<F>& log) {
  const int k = d.dim();
  const auto R1 = three(d.R, 1);
  const auto R2 = three(d.R, 2);
  log.equal("braid relation R1R2R1 = R2R1R2", "YB", R1 * R2 * R1, R2 * R1 * R2);
  const std::array<int, 1> first{1};
  const std::array<int, 1> second{2};
  const auto P = permutation_flip<F>(k);
  log.equal("skew inverse Tr_2 R1 Psi2 = P", "s-inv",
            plain_trace(R1 * three(d.psi, 2), second), P);
  log.equal("skew inverse Tr_2 Psi1 R2 = P", "s-inv",
            plain_trace(three(d.psi, 1) * R2, second), P);
  const auto I = identity<F>(k, 1);
  log.equal("Tr_1 C1 R = I", "trC-D", weighted_trace(d.R, first, d.C), I);
  log.equal("Tr_2 D2 R = I", "trC-D", weighted_trace(d.R, second, d.D), I);
  log.equal("strictness C_R D_{R^-1} = I", "ss-inv", d.C * d.D_inv_side, I);
  log.equal("strictness D_R C_{R^-1} = I", "ss-inv", d.D * d.C_inv_side, I);
}

template <class F>
LegOperator<F> kappa_of(const LegOperator<F>& R, const DeformParams<F>& p) {
  const F qq = p.q - F(1) / p.q;
  const auto I = identity<F>(R.dim(), 2);
  return (F(1) / (p.mu * qq)) * (I + qq * R - R * R);
}

template <class F>
LegOperator<F> d_product(const LegOperator<F>& D, int n) {
  LegOperator<F> out = D;
  for (int j = 2; j <= n; ++j) out = tensor(out, D);
  return out;
}

template <class F>
BmwCertificate<F> bmw_certify(const YangBaxterData<F>& d, const DeformParams<F>& p,
                              double tol) {
  BmwCertificate<F> cert{kappa_of(d.R, p), p, CheckLog<F>("bmw", tol)};
  auto& log = cert.checks;
  const auto& K = cert.K;
  const auto& R = d.R;
  const int k = d.dim();
  certify_yang_baxter(d, log);

  log.equal("R K = mu K", "kappa", R * K, p.mu * K);
  log.equal("K R = mu K", "kappa", K * R, p.mu * K);

  const auto K1 = three(K, 1);
  const auto K2 = three(K, 2);
  const std::array<LegOperator<F>, 2> Rp{three(R, 1), three(R, 2)};
  const std::array<LegOperator<F>, 2> Rm{three(d.R_inv, 1), three(d.R_inv, 2)};
  for (int eps : {1, -1}) {
    const std::string e = eps > 0 ? "+1" : "-1";
    const auto& S = eps > 0 ? Rp : Rm;  // R^eps
    const auto& T = eps > 0 ? Rm : Rp;  // R^-eps
    log.equal("K1 R2^e = K1 K2 R1^-e, e=" + e, "bmw3", K1 * S[1], K1 * K2 * T[0]);
    log.equal("K2 R1^e = K2 K1 R2^-e, e=" + e, "bmw3", K2 * S[0], K2 * K1 * T[1]);
    log.equal("R2^e K1 = R1^-e K2 K1, e=" + e, "bmw3", S[1] * K1, T[0] * K2 * K1);
    log.equal("R1^e K2 = R2^-e K1 K2, e=" + e, "bmw3", S[0] * K2, T[1] * K1 * K2);
  }
  log.equal("K1 K2 K1 = K1", "bmw5a", K1 * K2 * K1, K1);
  log.equal("K2 K1 K2 = K2", "bmw5a", K2 * K1 * K2, K2);
  log.equal("K^2 = eta K", "bmw5a", K * K, p.eta * K);
  log.count_equal("rank K = 1", "rankK=1", static_cast<long long>(rank(K, tol)), 1);

  const auto I1 = identity<F>(k, 1);
  log.equal("C D = mu^2 I", "Cinv-D", d.C * d.D, (p.mu * p.mu) * I1);
  const auto DD = d_product(d.D, 2);
  log.equal("R1 D1 D2 = D1 D2 R1", "RDD", R * DD, DD * R);
  log.equal("K1 D1 D2 = D1 D2 K1", "KDD", K * DD, DD * K);
  log.equal("D1 D2 K1 = mu^2 K1", "KDD", DD * K, (p.mu * p.mu) * K);
  const std::array<int, 1> second{2};
  log.equal("Tr_R,2 K1 = mu I", "traceDK", weighted_trace(K, second, d.D), p.mu * I1);
  log.scalar_equal("Tr D = (q-mu)(1/q+mu)/(q-1/q)", "traceD", full_trace(d.D),
                   (p.q - p.mu) * (F(1) / p.q + p.mu) / (p.q - F(1) / p.q));

  if (const auto* bad = log.first_failure()) {
    throw NotBmwType("BMW relation fails: " + bad->name + " [" + bad->witness + "]");
  }
  return cert;
}

template <class F>
CompatiblePair<F> make_pair(const YangBaxterData<F>& r, const YangBaxterData<F>& f,
                            double tol) {
  if (r.dim() != f.dim()) throw ShapeMismatch("pair members act on different spaces");
  CompatiblePair<F> pair{r, f, {}, false, false, CheckLog<F>("bmw", tol)};
  const int k = r.dim();
  pair.f_is_flip = f.R == permutation_flip<F>(k);
  pair.f_is_r = f.R == r.R;
  auto& log = pair.checks;
  const auto R1 = three(r.R, 1);
  const auto R2 = three(r.R, 2);
  const auto F1 = three(f.R, 1);
  const auto F2 = three(f.R, 2);
  log.equal("twist R1 F2 F1 = F2 F1 R2", "sovm", R1 * F2 * F1, F2 * F1 * R2);
  log.equal("twist R2 F1 F2 = F1 F2 R1", "sovm", R2 * F1 * F2, F1 * F2 * R1);
  const auto DD = d_product(r.D, 2);
  log.equal("F1 D1 D2 = D1 D2 F1", "FCC", f.R * DD, DD * f.R);
  if (const auto* bad = log.first_failure()) {
    throw NotCompatible("pair is not compatible: " + bad->name + " [" + bad->witness + "]");
  }

  const auto RF = f.R_inv * r.R * f.R;
  try {
    pair.twisted = skew_invert(RF, tol);
  } catch (const ConstructionError& e) {
    throw NotCompatible(std::string("twisted matrix is not strict skew invertible: ") +
                        e.what());
  }
  const auto T1 = three(RF, 1);
  const auto T2 = three(RF, 2);
  log.equal("twisted braid relation", "R_f", T1 * T2 * T1, T2 * T1 * T2);
  log.equal("twisted pair R_F1 F2 F1 = F2 F1 R_F2", "R_f", T1 * F2 * F1, F2 * F1 * T2);
  log.equal("twisted pair R_F2 F1 F2 = F1 F2 R_F1", "R_f", T2 * F1 * F2, F1 * F2 * T1);
  log.equal("twist by F^-1 recovers R", "R_f", f.R * RF * f.R_inv, r.R);
  if (const auto* bad = log.first_failure()) {
    throw NotCompatible("twisted pair check fails: " + bad->name);
  }
  return pair;
}

std::vector<int> z_word(int i) {
  std::vector<int> w;
  for (int top = i - 1; top >= 1; --top) {
    for (int j = 1; j <= top; ++j) w.push_back(j);
  }
  return w;
}

template <class F>
LegOperator<F> z_string(const LegOperator<F>& Fop, int i) {
  if (i < 1) throw LegRangeError("z_string needs i >= 1");
  std::vector<Placed<F>> word;
  for (int pos : z_word(i)) word.push_back({&Fop, pos});
  return word_product<F>(word, Fop.dim(), i);
}

template <class F>
void certify_z_strings(const CompatiblePair<F>& pair, int max_i, CheckLog<F>& log) {
  const auto& Fop = pair.f.R;
  const int k = Fop.dim();
  LegOperator<F> prev = identity<F>(k, 1);
  for (int i = 2; i <= max_i; ++i) {
    const auto z = z_string(Fop, i);
    // (F1…F_{i-1}) Z^(i-1) and Z^(i-1) (F_{i-1}…F1)
    std::vector<Placed<F>> up;
    std::vector<Placed<F>> down;
    for (int j = 1; j <= i - 1; ++j) up.push_back({&Fop, j});
    for (int j = i - 1; j >= 1; --j) down.push_back({&Fop, j});
    const auto prev_up = embed_at(prev, 1, i);
    log.equal("Z^(" + std::to_string(i) + ") recursions agree", "Z-i",
              apply_word_left<F>(up, prev_up), apply_word_right<F>(prev_up, down));
    for (int j = 1; j <= i - 1; ++j) {
      log.equal("R_" + std::to_string(j) + " Z^(" + std::to_string(i) + ") = Z (R_F)_" +
                    std::to_string(i - j),
                "Z-R", apply_left(pair.r.R, j, z), apply_right(z, pair.twisted.R, i - j));
    }
    log.equal("Z^(" + std::to_string(i) + ") commutes with prod D_{R_F}", "FCC",
              z * d_product(pair.twisted.D, i), d_product(pair.twisted.D, i) * z);
    prev = z;
  }
}

template <class F>
LegOperator<F> braid_image(const YangBaxterData<F>& d, const std::vector<int>& word,
                           int strands) {
  std::vector<Placed<F>> placed;
  for (int g : word) {
    const int j = std::abs(g);
    if (g == 0 || j >= strands) {
      throw LegRangeError("braid generator " + std::to_string(g) + " outside 1.." +
                          std::to_string(strands - 1));
    }
    placed.push_back({g > 0 ? &d.R : &d.R_inv, j});
  }
  return word_product<F>(placed, d.dim(), strands);
}

#define QMA_INSTANTIATE_YBKIT(F)                                                          \
  template LegOperator<F> transcribe_standard_O(const DeformParams<F>&);                  \
  template LegOperator<F> standard_O(const DeformParams<F>&, double);                     \
  template YangBaxterData<F> flip(int);                                                   \
  template YangBaxterData<F> skew_invert(const LegOperator<F>&, double);                  \
  template void certify_yang_baxter(const YangBaxterData<F>&, CheckLog<F>&);              \
  template LegOperator<F> kappa_of(const LegOperator<F>&, const DeformParams<F>&);        \
  template LegOperator<F> d_product(const LegOperator<F>&, int);                          \
  template BmwCertificate<F> bmw_certify(const YangBaxterData<F>&, const DeformParams<F>&, \
                                         double);                                         \
  template CompatiblePair<F> make_pair(const YangBaxterData<F>&, const YangBaxterData<F>&, \
                                       double);                                           \
  template LegOperator<F> z_string(const LegOperator<F>&, int);                           \
  template void certify_z_strings(const CompatiblePair<F>&, int, CheckLog<F>&);           \
  template LegOperator<F> braid_image(const YangBaxterData<F>&, const std::vector<int>&,  \
                                      int);

QMA_INSTANTIATE_YBKIT(Rational)
QMA_INSTANTIATE_YBKIT(double)

}  // namespace qma
