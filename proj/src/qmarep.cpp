#include "qma/qmarep.hpp"

#include <numeric>
#include <string>

#include "qma/dense.hpp"
#include "qma/errors.hpp"

namespace qma {

namespace {

std::string idx(const std::string& base, int i) { return base + "[" + std::to_string(i) + "]"; }

std::vector<int> leg_range(int from, int to) {
  std::vector<int> v(static_cast<std::size_t>(std::max(0, to - from + 1)));
  std::iota(v.begin(), v.end(), from);
  return v;
}

// Factors of α(M̄₁…M̄_j): the closed form for α±, the copies otherwise.
template <class F>
std::vector<Placed<F>> string_word(const Representation<F>& rep, int j, bool closed) {
  std::vector<Placed<F>> w;
  const auto& f = rep.pair.f;
  const int r = rep.rep_legs;
  if (closed) {
    for (int i = 1; i <= j; ++i) w.push_back({&rep.r_eps, i});
    for (int i = j; i >= 1; --i) w.push_back({&f.R, i});
    return w;
  }
  for (int i = 1; i <= j; ++i) {
    for (int t = i - 1; t >= 1; --t) w.push_back({&f.R, r + t});
    w.push_back({&rep.M_image, 1});
    for (int t = 1; t <= i - 1; ++t) w.push_back({&f.R_inv, r + t});
  }
  return w;
}

template <class F>
LegOperator<F> at(const LegOperator<F>& op, int pos, int total) {
  return embed_at(op, pos, total);
}

template <class F>
LegOperator<F> scalar_matrix(const F& c, int dim, int legs) {
  return c * identity<F>(dim, legs);
}

template <class F>
bool is_scalar(const LegOperator<F>& x, double tol) {
  const auto d = compare(x, scalar_matrix(x.at(0, 0), x.dim(), x.legs()));
  return FieldTraits<F>::exact ? d.count == 0 : d.max_abs <= tol;
}

template <class F>
bool agrees(const LegOperator<F>& x, const LegOperator<F>& y, double tol) {
  const auto d = compare(x, y);
  return FieldTraits<F>::exact ? d.count == 0 : d.max_abs <= tol;
}

template <class F>
void record_homomorphism(const Representation<F>& rep, CheckLog<F>& log) {
  const int r = rep.rep_legs;
  const auto s2 = copies_string(rep, 2);
  const auto& R = rep.pair.r.R;
  log.equal(std::string(rep_name(rep.tag)) + ": R M1 M2 = M1 M2 R", "qma", apply_left(R, r + 1, s2),
            apply_right(s2, R, r + 1));
}

// The named characteristic images, for the pairwise commutation check.
template <class F>
std::vector<std::pair<std::string, const LegOperator<F>*>> members(const CharImages<F>& c) {
  std::vector<std::pair<std::string, const LegOperator<F>*>> out;
  for (std::size_t i = 0; i < c.p.size(); ++i) out.emplace_back(idx("p", static_cast<int>(i)), &c.p[i]);
  for (std::size_t i = 0; i < c.e.size(); ++i) out.emplace_back(idx("e", static_cast<int>(i)), &c.e[i]);
  for (std::size_t i = 0; i < c.h.size(); ++i) out.emplace_back(idx("h", static_cast<int>(i)), &c.h[i]);
  out.emplace_back("g", &c.g);
  out.emplace_back("g_inv", &c.g_inv);
  return out;
}

}  // namespace

std::string_view rep_name(RepTag tag) {
  switch (tag) {
    case RepTag::alpha_plus: return "alpha+";
    case RepTag::alpha_minus: return "alpha-";
    case RepTag::beta: return "beta";
    case RepTag::tensor: return "tensor";
  }
  return "unknown";
}

template <class F>
std::optional<LegOperator<F>> operator_power(const LegOperator<F>& x, int e) {
  LegOperator<F> base = x;
  if (e < 0) {
    auto inv = try_inverse(x);
    if (!inv) return std::nullopt;
    base = std::move(*inv);
    e = -e;
  }
  auto out = identity<F>(x.dim(), x.legs());
  for (int i = 0; i < e; ++i) out = out * base;
  return out;
}

template <class F>
Representation<F> make_rep(const CompatiblePair<F>& pair, RepTag tag, CheckLog<F>& log) {
  Representation<F> rep;
  rep.pair = pair;
  rep.tag = tag;
  rep.rep_legs = 1;
  switch (tag) {
    case RepTag::alpha_plus: rep.r_eps = pair.r.R; break;
    case RepTag::alpha_minus: rep.r_eps = pair.r.R_inv; break;
    case RepTag::beta: break;
    case RepTag::tensor: throw ShapeMismatch("tensor representations are built by tensor_rep");
  }
  rep.M_image = rep.is_alpha() ? rep.r_eps * pair.f.R : pair.f.R * pair.f.R;
  record_homomorphism(rep, log);
  if (rep.is_alpha()) {
    for (int j = 1; j <= 3; ++j) {
      log.equal(idx(std::string(rep_name(tag)) + ": closed string equals copies, j", j), "strFRrep",
                string_image(rep, j), copies_string(rep, j));
    }
  }
  return rep;
}

template <class F>
LegOperator<F> string_image(const Representation<F>& rep, int j) {
  const auto w = string_word(rep, j, rep.is_alpha());
  return word_product<F>(w, rep.dim(), rep.rep_legs + j);
}

template <class F>
LegOperator<F> copies_string(const Representation<F>& rep, int j) {
  const auto w = string_word(rep, j, false);
  return word_product<F>(w, rep.dim(), rep.rep_legs + j);
}

template <class F>
LegOperator<F> copy_image(const Representation<F>& rep, int i, bool underline) {
  const auto& f = rep.pair.f;
  const int r = rep.rep_legs;
  const auto* left = underline ? &f.R_inv : &f.R;
  const auto* right = underline ? &f.R : &f.R_inv;
  std::vector<Placed<F>> w;
  for (int t = i - 1; t >= 1; --t) w.push_back({left, r + t});
  w.push_back({&rep.M_image, 1});
  for (int t = 1; t <= i - 1; ++t) w.push_back({right, r + t});
  return word_product<F>(w, rep.dim(), r + i);
}

template <class F>
LegOperator<F> ch_image(const Representation<F>& rep, const LegOperator<F>& element) {
  const int n = element.legs();
  if (n < 1 || element.dim() != rep.dim()) {
    throw ShapeMismatch("ch expects an element on at least one leg of dimension " +
                        std::to_string(rep.dim()));
  }
  const int r = rep.rep_legs;
  if (element.is_zero()) return LegOperator<F>(rep.dim(), r);
  const auto w = string_word(rep, n, rep.is_alpha());
  const auto y = apply_word_left<F>(w, embed_at(element, r + 1, r + n));
  const auto legs = leg_range(r + 1, r + n);
  return weighted_trace(y, legs, rep.pair.r.D);
}

template <class F>
CharImages<F> char_images(const Representation<F>& rep, const IdempotentTower<F>& tower,
                          CheckLog<F>& log) {
  const auto& p = tower.params;
  const int k = p.k;
  const int dim = rep.dim();
  const int r = rep.rep_legs;
  const double tol = log.tolerance();
  if (static_cast<int>(tower.a.size()) < k + 2) {
    throw ShapeMismatch("characteristic images need the antisymmetrizer tower up to k+1");
  }
  const auto unit = identity<F>(dim, r);
  CharImages<F> c;
  const std::string tag(rep_name(rep.tag));

  c.p.push_back(full_trace(rep.pair.r.D) * unit);
  log.equal(tag + ": p[0] = mu eta", "power-sums", c.p[0], p.trace_identity() * unit);
  c.p.push_back(ch_image(rep, identity<F>(dim, 1)));
  for (int i = 2; i <= k; ++i) {
    std::vector<int> word;
    for (int j = i - 1; j >= 1; --j) word.push_back(j);
    c.p.push_back(ch_image(rep, braid_image(rep.pair.r, word, i)));
  }
  c.e.push_back(unit);
  for (int i = 1; i <= k + 1; ++i) c.e.push_back(ch_image(rep, tower.a[static_cast<std::size_t>(i)]));
  c.h.push_back(unit);
  for (std::size_t i = 1; i < tower.s.size(); ++i) c.h.push_back(ch_image(rep, tower.s[i]));
  c.g = (F(1) / p.eta) * ch_image(rep, tower.K);
  auto inv = try_inverse(c.g);
  if (!inv) throw SingularContraction(tag + ": the image of the contraction g is singular");
  c.g_inv = std::move(*inv);
  c.det = c.e[static_cast<std::size_t>(k)];

  log.equal(tag + ": g g_inv = I", "j-inv", c.g * c.g_inv, unit);
  log.zero(idx(tag + ": finite height e", k + 1), "finite-height", c.e[static_cast<std::size_t>(k + 1)]);

  const auto all = members(c);
  std::string witness;
  double worst = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const auto& x = *all[i].second;
      const auto& y = *all[j].second;
      const auto d = compare(x * y, y * x);
      const bool ok = FieldTraits<F>::exact ? d.count == 0 : d.max_abs <= tol;
      worst = std::max(worst, d.max_abs);
      if (!ok && witness.empty()) witness = all[i].first + " vs " + all[j].first + ": " + d.witness;
    }
  }
  log.holds(tag + ": characteristic images commute pairwise", "char", witness.empty(), witness, worst);
  return c;
}

template <class F>
StructureMatrices<F> structure_matrices(const CompatiblePair<F>& pair,
                                        const IdempotentTower<F>& tower, CheckLog<F>& log) {
  const auto& p = tower.params;
  const int k = p.k;
  const int dim = pair.r.dim();
  const auto& Fo = pair.f.R;
  const auto& Fi = pair.f.R_inv;
  const auto& K = tower.K;
  if (static_cast<int>(tower.a.size()) < k + 1) {
    throw ShapeMismatch("structure matrices need the antisymmetrizer a^(k)");
  }
  StructureMatrices<F> sm;
  const std::vector<int> tail{2, 3};
  {
    const std::vector<Placed<F>> w{{&K, 2}, {&Fi, 1}, {&Fi, 2}};
    sm.G = plain_trace(word_product<F>(w, dim, 3), tail);
    const std::vector<Placed<F>> wi{{&Fo, 2}, {&Fo, 1}, {&K, 2}};
    sm.G_inv = plain_trace(word_product<F>(wi, dim, 3), tail);
  }
  const F pref = qnum(p, k) * (F(1) + ipow(p.q, 2 - k)) / (p.q + ipow(p.q, 1 - k));
  const auto up = embed_at(tower.a[static_cast<std::size_t>(k)], 2, k + 1);
  const auto rest = leg_range(2, k + 1);
  {
    std::vector<Placed<F>> w;
    for (int i = 1; i <= k; ++i) w.push_back({&Fi, i});
    sm.O = pref * plain_trace(apply_word_right<F>(up, w), rest);
    std::vector<Placed<F>> wi;
    for (int i = k; i >= 1; --i) wi.push_back({&Fo, i});
    sm.O_inv = pref * plain_trace(apply_word_left<F>(wi, up), rest);
  }
  const auto I1 = identity<F>(dim, 1);
  log.equal("G G_inv = I", "G", sm.G * sm.G_inv, I1);
  log.equal("G_inv G = I", "G", sm.G_inv * sm.G, I1);
  log.equal("O O_inv = I", "O-inverse", sm.O * sm.O_inv, I1);
  log.equal("O_inv O = I", "O-inverse", sm.O_inv * sm.O, I1);
  const auto O1 = at(sm.O, 1, 2);
  const auto O2 = at(sm.O, 2, 2);
  log.equal("O1 F = F O2", "ofo", O1 * Fo, Fo * O2);
  log.equal("O1 F_inv = F_inv O2", "ofo", O1 * Fi, Fi * O2);
  const auto OO = O1 * O2;
  log.equal("R O1 O2 = O1 O2 R", "oor", pair.r.R * OO, OO * pair.r.R);
  log.equal("[D_R, O] = 0", "commdro", pair.r.D * sm.O, sm.O * pair.r.D);
  log.equal("[G, O] = 0", "commdro", sm.G * sm.O, sm.O * sm.G);
  log.equal("O^2 = G^k", "o2gk", sm.O * sm.O, *operator_power(sm.G, k));
  if (pair.f_is_r) {
    const F sign = (k % 2 == 1) ? F(1) : F(-1);
    log.equal("pair {R,R}: G = I", "scalar-forms", sm.G, I1);
    log.equal("pair {R,R}: O = (-1)^(k-1) I", "scalar-forms", sm.O, sign * I1);
  }
  return sm;
}

template <class F>
void verify_images(const Representation<F>& rep, const CharImages<F>& images,
                   const StructureMatrices<F>& sm, const DeformParams<F>& p, CheckLog<F>& log) {
  const int k = p.k;
  const std::string tag(rep_name(rep.tag));
  const double tol = log.tolerance();
  const auto unit = identity<F>(rep.dim(), rep.rep_legs);
  const F mu2 = p.mu * p.mu;
  const F top = ipow(p.q, k * (1 - k));
  const F sign = (k % 2 == 1) ? F(1) : F(-1);
  if (!rep.is_alpha()) {
    const bool g_form = rep.rep_legs == 1 && agrees(images.g, mu2 * sm.G_inv, tol);
    const bool det_form = rep.rep_legs == 1 && agrees(images.det, (sign * top) * sm.O_inv, tol);
    log.note(tag + ": g image against mu^2 G_inv", "observation", g_form ? "equal" : "different");
    log.note(tag + ": e_k image against the alpha form", "observation", det_form ? "equal" : "different");
    return;
  }
  log.equal(tag + ": g = mu^2 G_inv", "imageg", images.g, mu2 * sm.G_inv);
  log.equal(tag + ": e_k = (-1)^(k-1) q^(k(1-k)) O_inv", "aplde", images.det, (sign * top) * sm.O_inv);
  if (rep.pair.f_is_r) {
    log.equal(tag + ": pair {R,R}: g = mu^2 I", "scalar-forms", images.g, mu2 * unit);
    log.equal(tag + ": pair {R,R}: e_k = q^(k(1-k)) I", "scalar-forms", images.det, top * unit);
    std::string witness;
    for (const auto& [name, op] : members(images)) {
      if (!is_scalar(*op, tol) && witness.empty()) witness = name + " is not a scalar matrix";
    }
    log.holds(tag + ": pair {R,R}: characteristic images are scalar", "center", witness.empty(),
              witness);
  }
}

template <class F>
LegOperator<F> minv_image(const Representation<F>& rep, const CharImages<F>& images,
                          const StructureMatrices<F>& sm, const DeformParams<F>& p,
                          CheckLog<F>& log) {
  const int r = rep.rep_legs;
  const std::string tag(rep_name(rep.tag));
  if (images.g_inv.legs() != r) throw SingularContraction(tag + ": no inverse of the g image");
  const auto m2 = copy_image(rep, 2, false);
  const auto kappa = kappa_of(rep.pair.r.R, p);
  const std::vector<int> last{r + 2};
  auto x = p.mu * weighted_trace(apply_right(m2, kappa, r + 1), last, rep.pair.r.D);
  x = apply_right(x, images.g_inv, 1);
  const auto unit = identity<F>(rep.dim(), r + 1);
  const auto& M = rep.M_image;
  log.equal(tag + ": M M_inv = I", "M-inv", M * x, unit);
  log.equal(tag + ": M_inv M = I", "M-inv", x * M, unit);
  const auto g_at = embed_at(images.g, 1, r + 1);
  const auto Gi = embed_at(sm.G_inv, r + 1, r + 1);
  const auto Gm = embed_at(sm.G, r + 1, r + 1);
  log.equal(tag + ": M g = g (G_inv M G)", "g-perm", M * g_at, g_at * Gi * M * Gm);
  const auto gi_at = embed_at(images.g_inv, 1, r + 1);
  log.equal(tag + ": g_inv M = (G_inv M G) g_inv", "g-perm", gi_at * M, Gi * M * Gm * gi_at);
  return x;
}

template <class F>
void verify_reciprocal(const CharImages<F>& images, int k, CheckLog<F>& log) {
  const auto& e = images.e;
  std::vector<LegOperator<F>> powers(static_cast<std::size_t>(k + 1));
  powers[0] = identity<F>(images.g.dim(), images.g.legs());
  for (int j = 1; j <= k; ++j) powers[static_cast<std::size_t>(j)] = powers[static_cast<std::size_t>(j - 1)] * images.g;
  for (int i = 0; i < k; ++i) {
    const auto lhs = powers[static_cast<std::size_t>(k - i)] * e[static_cast<std::size_t>(i)];
    const auto rhs = e[static_cast<std::size_t>(k)] * e[static_cast<std::size_t>(k - i)];
    log.equal(idx("g^(k-i) e_i = e_k e_(k-i), i", i), "reciprocal", lhs, rhs);
  }
}

template <class F>
void verify_det_commutation(const Representation<F>& rep, const CharImages<F>& images,
                            const StructureMatrices<F>& sm, CheckLog<F>& log) {
  const int r = rep.rep_legs;
  const std::string tag(rep_name(rep.tag));
  const auto& M = rep.M_image;
  const auto d_at = embed_at(images.det, 1, r + 1);
  const auto Oi = embed_at(sm.O_inv, r + 1, r + 1);
  const auto Om = embed_at(sm.O, r + 1, r + 1);
  log.equal(tag + ": M e_k = e_k (O_inv M O)", "Ma_k", M * d_at, d_at * Oi * M * Om);
  if (rep.is_alpha()) {
    const auto O0i = embed_at(sm.O_inv, 1, 2);
    log.equal(tag + ": M O0_inv = O0_inv O1_inv M O1", "oor1", M * O0i, O0i * Oi * M * Om);
  }
}

template <class F>
ResolutionResult verify_resolution(const CharImages<F>& images, const StructureMatrices<F>& sm,
                                   const DeformParams<F>& p, CheckLog<F>& log) {
  const int k = p.k;
  const double tol = log.tolerance();
  const auto& e = images.e;
  const auto unit = identity<F>(images.g.dim(), images.g.legs());
  auto gpow = [&](int n) {
    return n >= 0 ? *operator_power(images.g, n) : *operator_power(images.g_inv, -n);
  };
  auto E = [&](int j) -> const LegOperator<F>& { return e[static_cast<std::size_t>(j)]; };
  ResolutionResult res;
  res.even = k % 2 == 0;
  if (res.even) {
    const int l = k / 2;
    res.ell = l;
    res.hypothesis_met = try_inverse(E(l)).has_value();
    if (res.hypothesis_met) {
      if (sm.G.legs() == images.g.legs()) {
        log.equal("G^(-l) = -O_inv", "components", *operator_power(sm.G, -l), F(-1) * sm.O_inv);
      }
    } else {
      log.skip("G^(-l) = -O_inv", "components", "hypothesis not met: e_l image is singular");
    }
    const auto y = gpow(-l) * E(k);
    if (agrees(y, unit, tol)) {
      res.tau = 1;
    } else if (agrees(y, F(-1) * unit, tol)) {
      res.tau = -1;
    }
    if (res.hypothesis_met) {
      log.holds("g^(-l) e_2l is +-I", "components", res.tau != 0,
                res.tau != 0 ? std::string() : compare(y, unit).witness);
    } else {
      log.note("g^(-l) e_2l", "observation",
               res.tau != 0 ? "scalar " + std::to_string(res.tau) : "not scalar");
    }
    if (res.tau == 0) return res;
    log.note("component sign", "components", std::to_string(res.tau));
    const F t(res.tau);
    for (int i = 0; i <= l; ++i) {
      log.equal(idx("e_(l+i) = tau g^i e_(l-i), i", i), "reciprocal2", E(l + i), t * (gpow(i) * E(l - i)));
    }
    if (res.tau < 0) log.zero("tau = -1 forces e_l = 0", "reciprocal2", E(l));
    // Every e_j, j >= l, from {g, e_0..e_l} (τ = 1) or {g, e_0..e_{l-1}} (τ = -1).
    std::string witness;
    for (int j = l; j <= k + 1; ++j) {
      LegOperator<F> built(unit.dim(), unit.legs());
      if (j <= k && !(res.tau < 0 && j == l)) built = t * (gpow(j - l) * E(k - j));
      if (!agrees(built, E(j), tol) && witness.empty()) witness = idx("e", j) + " not reproduced";
    }
    log.holds("e_j for j >= l generated by the component generators", "generation", witness.empty(),
              witness);
    return res;
  }
  const int l = (k + 1) / 2;
  res.ell = l;
  res.hypothesis_met = true;
  const auto H = gpow(1 - l) * E(2 * l - 1);
  log.equal("(g^(1/2))^2 = g", "root-g", H * H, images.g);
  for (int i = 0; i <= l - 1; ++i) {
    log.equal(idx("e_(l+i) = (g^(1/2))^(2i+1) e_(l-1-i), i", i), "reciprocal3", E(l + i),
              *operator_power(H, 2 * i + 1) * E(l - 1 - i));
  }
  log.equal("e_(2l-1) = (g^(1/2))^(2l-1)", "root-g", E(2 * l - 1), *operator_power(H, 2 * l - 1));
  std::string witness;
  for (int j = l; j <= k + 1; ++j) {
    LegOperator<F> built(unit.dim(), unit.legs());
    if (j <= k) built = *operator_power(H, 2 * (j - l) + 1) * E(k - j);
    if (!agrees(built, E(j), tol) && witness.empty()) witness = idx("e", j) + " not reproduced";
  }
  log.holds("e_j for j >= l generated by g^(1/2) and e_0..e_(l-1)", "generation", witness.empty(),
            witness);
  return res;
}

template <class F>
void verify_string_forms(const Representation<F>& rep, const CharImages<F>& images,
                         const IdempotentTower<F>& tower, int z_max, CheckLog<F>& log) {
  const auto& p = tower.params;
  const int k = p.k;
  const int r = rep.rep_legs;
  const std::string tag(rep_name(rep.tag));
  const F inv_mu2 = F(1) / (p.mu * p.mu);
  const int cmax = std::min(2, static_cast<int>(tower.c.size()) - 1);
  for (int i = 1; i <= cmax; ++i) {
    const auto x = embed_at(tower.c[static_cast<std::size_t>(i)], r + 1, r + 2 * i);
    const auto w = string_word(rep, 2 * i, rep.is_alpha());
    const auto lhs = apply_word_left<F>(w, x);
    const auto gi = ipow(inv_mu2, i) * *operator_power(images.g, i);
    log.equal(idx(tag + ": string c = (g/mu^2)^i c, i", i), "spec-cM", lhs, apply_left(gi, 1, x));
  }
  const auto x = embed_at(tower.a[static_cast<std::size_t>(k)], r + 1, r + k);
  const auto w = string_word(rep, k, rep.is_alpha());
  const auto lhs = apply_word_left<F>(w, x);
  const F top = ipow(p.q, k * (k - 1));
  if (k <= 4) {
    log.equal(tag + ": string a[k] = q^(k(k-1)) e_k a[k]", "spec-aM", lhs,
              top * apply_left(images.det, 1, x));
  } else {
    log.skip(tag + ": string a[k] = q^(k(k-1)) e_k a[k]", "spec-aM", "run for k <= 4 only");
  }
  log.equal(tag + ": plain trace of string a[k] = q^(k(k-1)) e_k", "qdet-1",
            plain_trace(lhs, leg_range(r + 1, r + k)), top * images.det);
  for (int i = 1; i <= z_max; ++i) {
    const auto Z = embed_at(z_string(rep.pair.f.R, i), r + 1, r + i);
    for (int j = 1; j <= i; ++j) {
      const auto over = embed_at(copy_image(rep, j, false), 1, r + i);
      const auto under = embed_at(copy_image(rep, i - j + 1, true), 1, r + i);
      log.equal(tag + ": M_over(" + std::to_string(j) + ") Z(" + std::to_string(i) +
                    ") = Z M_under(" + std::to_string(i - j + 1) + ")",
                "Z-M", over * Z, Z * under);
    }
  }
}

template <class F>
Representation<F> tensor_rep(const Representation<F>& a, const Representation<F>& b,
                             CheckLog<F>& log) {
  if (!a.pair.f_is_flip || !b.pair.f_is_flip) {
    throw NotFlipPair("tensor products of representations need the pair {R,P}");
  }
  if (a.dim() != b.dim()) throw ShapeMismatch("tensor_rep: representation dimensions differ");
  const int ra = a.rep_legs;
  const int rb = b.rep_legs;
  std::vector<int> perm;
  for (int i = 1; i <= ra; ++i) perm.push_back(i);
  for (int i = 1; i <= rb; ++i) perm.push_back(ra + 1 + i);
  perm.push_back(ra + 1);
  const auto xa = permute_legs(tensor(a.M_image, identity<F>(a.dim(), rb)), perm);
  const auto xb = tensor(identity<F>(a.dim(), ra), b.M_image);
  Representation<F> t;
  t.pair = a.pair;
  t.tag = RepTag::tensor;
  t.rep_legs = ra + rb;
  t.M_image = xa * xb;
  record_homomorphism(t, log);
  return t;
}

template <class F>
void verify_group_like(const CharImages<F>& product, const CharImages<F>& a,
                       const CharImages<F>& b, const DeformParams<F>& p, CheckLog<F>& log) {
  const int k = p.k;
  log.equal("det image of the product = q^(k(k-1)) det image tensor det image", "group-like",
            product.det, ipow(p.q, k * (k - 1)) * tensor(a.det, b.det));
  log.equal("g image of the product = mu^-2 g image tensor g image", "group-like", product.g,
            (F(1) / (p.mu * p.mu)) * tensor(a.g, b.g));
}

#define QMA_INSTANTIATE_QMAREP(F)                                                             \
  template std::optional<LegOperator<F>> operator_power(const LegOperator<F>&, int);          \
  template Representation<F> make_rep(const CompatiblePair<F>&, RepTag, CheckLog<F>&);        \
  template LegOperator<F> string_image(const Representation<F>&, int);                        \
  template LegOperator<F> copies_string(const Representation<F>&, int);                       \
  template LegOperator<F> copy_image(const Representation<F>&, int, bool);                    \
  template LegOperator<F> ch_image(const Representation<F>&, const LegOperator<F>&);          \
  template CharImages<F> char_images(const Representation<F>&, const IdempotentTower<F>&,     \
                                     CheckLog<F>&);                                           \
  template StructureMatrices<F> structure_matrices(const CompatiblePair<F>&,                  \
                                                   const IdempotentTower<F>&, CheckLog<F>&);  \
  template void verify_images(const Representation<F>&, const CharImages<F>&,                 \
                              const StructureMatrices<F>&, const DeformParams<F>&,            \
                              CheckLog<F>&);                                                  \
  template LegOperator<F> minv_image(const Representation<F>&, const CharImages<F>&,          \
                                     const StructureMatrices<F>&, const DeformParams<F>&,     \
                                     CheckLog<F>&);                                           \
  template void verify_reciprocal(const CharImages<F>&, int, CheckLog<F>&);                   \
  template void verify_det_commutation(const Representation<F>&, const CharImages<F>&,        \
                                       const StructureMatrices<F>&, CheckLog<F>&);            \
  template ResolutionResult verify_resolution(const CharImages<F>&,                           \
                                              const StructureMatrices<F>&,                    \
                                              const DeformParams<F>&, CheckLog<F>&);          \
  template void verify_string_forms(const Representation<F>&, const CharImages<F>&,           \
                                    const IdempotentTower<F>&, int, CheckLog<F>&);            \
  template Representation<F> tensor_rep(const Representation<F>&, const Representation<F>&,   \
                                        CheckLog<F>&);                                        \
  template void verify_group_like(const CharImages<F>&, const CharImages<F>&,                 \
                                  const CharImages<F>&, const DeformParams<F>&, CheckLog<F>&);

QMA_INSTANTIATE_QMAREP(Rational)
QMA_INSTANTIATE_QMAREP(double)

}  // namespace qma
