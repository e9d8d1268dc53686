#include "qma/braided.hpp"

#include <random>
#include <string>

#include "qma/dense.hpp"
#include "qma/errors.hpp"

namespace qma {

namespace {

Index ipow_index(int base, int e) {
  Index out = 1;
  for (int i = 0; i < e; ++i) out *= static_cast<Index>(base);
  return out;
}

// Digits (a, b) of every symbol in order, base dim.
Index word_index(const TwoCopyWord& w, int dim) {
  Index out = 0;
  for (const auto& s : w) out = (out * static_cast<Index>(dim) + s.a) * static_cast<Index>(dim) + s.b;
  return out;
}

template <class F>
bool is_zero_value(const F& x) {
  return FieldTraits<F>::is_zero(x);
}

std::string symbol_text(const Symbol& s) {
  return std::string(s.copy == Copy::dot ? "dot" : "ddot") + "(" + std::to_string(s.a + 1) + "," +
         std::to_string(s.b + 1) + ")";
}

std::string word_text(const TwoCopyWord& w) {
  std::string out;
  for (const auto& s : w) out += (out.empty() ? "" : " ") + symbol_text(s);
  return out.empty() ? "1" : out;
}

template <class F>
std::string poly_head(const TwoCopyPoly<F>& p) {
  if (p.empty()) return "0";
  return FieldTraits<F>::format(p.begin()->second) + " * " + word_text(p.begin()->first) +
         (p.size() > 1 ? " + ..." : "");
}

template <class F>
std::map<Index, std::vector<std::pair<Index, const TwoCopyPoly<F>*>>> rows_of(const PolyMatrix<F>& m) {
  std::map<Index, std::vector<std::pair<Index, const TwoCopyPoly<F>*>>> out;
  for (const auto& [rc, p] : m.entries) out[rc.first].emplace_back(rc.second, &p);
  return out;
}

template <class F>
void prune(PolyMatrix<F>& m) {
  for (auto it = m.entries.begin(); it != m.entries.end();) {
    it = it->second.empty() ? m.entries.erase(it) : std::next(it);
  }
}

// Rows of the rule as sparse lists.
template <class F>
std::vector<std::vector<std::pair<Index, F>>> rule_rows(const LegOperator<F>& op) {
  std::vector<std::vector<std::pair<Index, F>>> rows(static_cast<std::size_t>(op.size()));
  for (const auto& e : op.entries()) rows[static_cast<std::size_t>(e.row)].emplace_back(e.col, e.value);
  return rows;
}

template <class F>
TwoCopyPoly<F> nf_with(const TwoCopyPoly<F>& poly, int dim,
                       const std::vector<std::vector<std::pair<Index, F>>>& rows, Schedule schedule) {
  TwoCopyPoly<F> work = poly;
  TwoCopyPoly<F> out;
  const Index d = static_cast<Index>(dim);
  while (!work.empty()) {
    auto node = work.extract(work.begin());
    const TwoCopyWord& w = node.key();
    const F c = node.mapped();
    int hit = -1;
    const int n = static_cast<int>(w.size());
    if (schedule == Schedule::leftmost) {
      for (int t = 0; t + 1 < n && hit < 0; ++t) {
        if (w[t].copy == Copy::ddot && w[t + 1].copy == Copy::dot) hit = t;
      }
    } else {
      for (int t = n - 2; t >= 0 && hit < 0; --t) {
        if (w[t].copy == Copy::ddot && w[t + 1].copy == Copy::dot) hit = t;
      }
    }
    if (hit < 0) {
      TwoCopyPoly<F> one{{w, c}};
      poly_axpy(out, F(1), one);
      continue;
    }
    const auto& s1 = w[static_cast<std::size_t>(hit)];
    const auto& s2 = w[static_cast<std::size_t>(hit + 1)];
    const Index row = ((s1.a * d + s1.b) * d + s2.a) * d + s2.b;
    for (const auto& [col, x] : rows[static_cast<std::size_t>(row)]) {
      const auto dg = index_digits(col, dim, 4);
      TwoCopyWord nw = w;
      nw[static_cast<std::size_t>(hit)] = {Copy::dot, static_cast<std::uint8_t>(dg[0]),
                                            static_cast<std::uint8_t>(dg[1])};
      nw[static_cast<std::size_t>(hit + 1)] = {Copy::ddot, static_cast<std::uint8_t>(dg[2]),
                                                static_cast<std::uint8_t>(dg[3])};
      TwoCopyPoly<F> one{{std::move(nw), c * x}};
      poly_axpy(work, F(1), one);
    }
  }
  return out;
}

// Rows: normal-form polynomials of one bidegree as coordinate vectors.
template <class F>
std::size_t span_rank(const std::vector<TwoCopyPoly<F>>& polys, int dim, double tol) {
  int len = 0;
  for (const auto& p : polys) {
    if (!p.empty()) len = static_cast<int>(p.begin()->first.size());
  }
  if (len == 0) return 0;
  int legs = 2 * len;
  while (ipow_index(dim, legs) < polys.size()) ++legs;
  std::vector<typename LegOperator<F>::Entry> e;
  for (std::size_t r = 0; r < polys.size(); ++r) {
    for (const auto& [w, x] : polys[r]) e.push_back({static_cast<Index>(r), word_index(w, dim), x});
  }
  return rank(LegOperator<F>(dim, legs, std::move(e)), tol);
}

template <class F>
std::string first_nonzero(const PolyMatrix<F>& m) {
  for (const auto& [rc, p] : m.entries) {
    if (!p.empty()) {
      return "(" + std::to_string(rc.first) + "," + std::to_string(rc.second) + "): " + poly_head(p);
    }
  }
  return {};
}

}  // namespace

std::pair<int, int> bidegree(const TwoCopyWord& w) {
  int d = 0;
  for (const auto& s : w) d += s.copy == Copy::dot ? 1 : 0;
  return {d, static_cast<int>(w.size()) - d};
}

bool is_normal(const TwoCopyWord& w) {
  for (std::size_t t = 0; t + 1 < w.size(); ++t) {
    if (w[t].copy == Copy::ddot && w[t + 1].copy == Copy::dot) return false;
  }
  return true;
}

template <class F>
void poly_axpy(TwoCopyPoly<F>& acc, const F& c, const TwoCopyPoly<F>& x) {
  for (const auto& [w, v] : x) {
    auto [it, inserted] = acc.try_emplace(w, c * v);
    if (!inserted) it->second += c * v;
    if (is_zero_value(it->second)) acc.erase(it);
  }
}

template <class F>
TwoCopyPoly<F> poly_mul(const TwoCopyPoly<F>& x, const TwoCopyPoly<F>& y) {
  TwoCopyPoly<F> out;
  for (const auto& [wx, cx] : x) {
    for (const auto& [wy, cy] : y) {
      TwoCopyWord w = wx;
      w.insert(w.end(), wy.begin(), wy.end());
      TwoCopyPoly<F> one{{std::move(w), cx * cy}};
      poly_axpy(out, F(1), one);
    }
  }
  return out;
}

template <class F>
TwoCopyPoly<F> poly_word(const TwoCopyWord& w, const F& c) {
  TwoCopyPoly<F> out;
  if (!is_zero_value(c)) out.emplace(w, c);
  return out;
}

template <class F>
PolyMatrix<F> generator_matrix(Copy c, int dim) {
  PolyMatrix<F> m{dim, 1, {}};
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      m.entries[{static_cast<Index>(a), static_cast<Index>(b)}] =
          poly_word<F>({{c, static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)}});
    }
  }
  return m;
}

template <class F>
PolyMatrix<F> coproduct_matrix(int dim) {
  PolyMatrix<F> m{dim, 1, {}};
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      TwoCopyPoly<F> p;
      for (int c = 0; c < dim; ++c) {
        const auto u8 = [](int x) { return static_cast<std::uint8_t>(x); };
        poly_axpy(p, F(1), poly_word<F>({{Copy::dot, u8(a), u8(c)}, {Copy::ddot, u8(c), u8(b)}}));
      }
      m.entries[{static_cast<Index>(a), static_cast<Index>(b)}] = std::move(p);
    }
  }
  return m;
}

template <class F>
PolyMatrix<F> place_first(const PolyMatrix<F>& x, int legs) {
  const Index tail = ipow_index(x.dim, legs - x.legs);
  PolyMatrix<F> out{x.dim, legs, {}};
  for (const auto& [rc, p] : x.entries) {
    for (Index t = 0; t < tail; ++t) out.entries[{rc.first * tail + t, rc.second * tail + t}] = p;
  }
  return out;
}

template <class F>
PolyMatrix<F> numeric_left(const LegOperator<F>& n, const PolyMatrix<F>& x) {
  const auto rows = rows_of(x);
  PolyMatrix<F> out{x.dim, x.legs, {}};
  for (const auto& e : n.entries()) {
    auto it = rows.find(e.col);
    if (it == rows.end()) continue;
    for (const auto& [c, p] : it->second) poly_axpy(out.entries[{e.row, c}], e.value, *p);
  }
  prune(out);
  return out;
}

template <class F>
PolyMatrix<F> numeric_right(const PolyMatrix<F>& x, const LegOperator<F>& n) {
  std::map<Index, std::vector<std::pair<Index, F>>> rows;
  for (const auto& e : n.entries()) rows[e.row].emplace_back(e.col, e.value);
  PolyMatrix<F> out{x.dim, x.legs, {}};
  for (const auto& [rc, p] : x.entries) {
    auto it = rows.find(rc.second);
    if (it == rows.end()) continue;
    for (const auto& [c, v] : it->second) poly_axpy(out.entries[{rc.first, c}], v, p);
  }
  prune(out);
  return out;
}

template <class F>
PolyMatrix<F> poly_product(const PolyMatrix<F>& x, const PolyMatrix<F>& y) {
  const auto rows = rows_of(y);
  PolyMatrix<F> out{x.dim, x.legs, {}};
  for (const auto& [rc, p] : x.entries) {
    auto it = rows.find(rc.second);
    if (it == rows.end()) continue;
    for (const auto& [c, q] : it->second) poly_axpy(out.entries[{rc.first, c}], F(1), poly_mul(p, *q));
  }
  prune(out);
  return out;
}

template <class F>
PolyMatrix<F> poly_difference(const PolyMatrix<F>& x, const PolyMatrix<F>& y) {
  PolyMatrix<F> out = x;
  for (const auto& [rc, p] : y.entries) poly_axpy(out.entries[rc], F(-1), p);
  prune(out);
  return out;
}

template <class F>
PolyMatrix<F> poly_copy(const PolyMatrix<F>& x, const YangBaxterData<F>& f, int i, int legs) {
  auto out = place_first(x, legs);
  for (int t = 1; t <= i - 1; ++t) {
    out = numeric_right(numeric_left(embed_at(f.R, t, legs), out), embed_at(f.R_inv, t, legs));
  }
  return out;
}

template <class F>
PolyMatrix<F> relation_defect(const PolyMatrix<F>& x, const CompatiblePair<F>& pair, int pos,
                              int legs) {
  const auto xx = poly_product(poly_copy(x, pair.f, pos, legs), poly_copy(x, pair.f, pos + 1, legs));
  const auto R = embed_at(pair.r.R, pos, legs);
  return poly_difference(numeric_left(R, xx), numeric_right(xx, R));
}

template <class F>
ExchangeRule<F> exchange_map(const YangBaxterData<F>& f) {
  const int k = f.dim();
  const std::size_t n = static_cast<std::size_t>(ipow_index(k, 4));
  const auto ddot1 = place_first(generator_matrix<F>(Copy::ddot, k), 2);
  const auto dot2 = poly_copy(generator_matrix<F>(Copy::dot, k), f, 2, 2);
  const auto lhs = poly_product(ddot1, dot2);
  const auto rhs = poly_product(dot2, ddot1);
  DenseMatrix<F> A(n);
  DenseMatrix<F> B(n);
  const Index kk = static_cast<Index>(k) * static_cast<Index>(k);
  for (const auto& [rc, p] : lhs.entries) {
    for (const auto& [w, x] : p) A(rc.first * kk + rc.second, word_index(w, k)) += x;
  }
  for (const auto& [rc, p] : rhs.entries) {
    for (const auto& [w, x] : p) B(rc.first * kk + rc.second, word_index(w, k)) += x;
  }
  auto fwd = dense_solve(A, B.a, n);
  auto inv = dense_solve(B, A.a, n);
  if (!fwd || !inv) {
    throw ExchangeNotInvertible("the mixed commutation relations do not determine an invertible exchange");
  }
  ExchangeRule<F> rule;
  rule.dim = k;
  DenseMatrix<F> m(n);
  m.a = std::move(*fwd);
  rule.forward = from_matrix(k, 4, m);
  m.a = std::move(*inv);
  rule.inverse = from_matrix(k, 4, m);
  return rule;
}

template <class F>
TwoCopyPoly<F> normal_form(const TwoCopyPoly<F>& poly, const ExchangeRule<F>& rule,
                           Schedule schedule) {
  return nf_with(poly, rule.dim, rule_rows(rule.forward), schedule);
}

template <class F>
PolyMatrix<F> normal_form(const PolyMatrix<F>& m, const ExchangeRule<F>& rule) {
  const auto rows = rule_rows(rule.forward);
  PolyMatrix<F> out{m.dim, m.legs, {}};
  for (const auto& [rc, p] : m.entries) {
    auto q = nf_with(p, rule.dim, rows, Schedule::leftmost);
    if (!q.empty()) out.entries.emplace(rc, std::move(q));
  }
  return out;
}

template <class F>
void verify_exchange(const ExchangeRule<F>& rule, int samples, CheckLog<F>& log) {
  const int k = rule.dim;
  const auto I = identity<F>(k, 4);
  log.equal("exchange rule followed by its inverse", "comcopF1", rule.forward * rule.inverse, I);
  log.equal("inverse rule followed by the exchange rule", "comcopF1", rule.inverse * rule.forward, I);

  const auto rows = rule_rows(rule.forward);
  const int sym = k * k;
  // Tag patterns of degree (2,2) words: positions of the two dot symbols.
  std::vector<std::array<Copy, 4>> patterns;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      std::array<Copy, 4> p{Copy::ddot, Copy::ddot, Copy::ddot, Copy::ddot};
      p[static_cast<std::size_t>(i)] = Copy::dot;
      p[static_cast<std::size_t>(j)] = Copy::dot;
      patterns.push_back(p);
    }
  }
  auto make = [&](const std::array<Copy, 4>& pat, const std::array<int, 4>& s) {
    TwoCopyWord w;
    for (std::size_t t = 0; t < 4; ++t) {
      w.push_back({pat[t], static_cast<std::uint8_t>(s[t] / k), static_cast<std::uint8_t>(s[t] % k)});
    }
    return w;
  };
  std::string witness;
  std::size_t tested = 0;
  auto test = [&](const TwoCopyWord& w) {
    ++tested;
    const auto p = poly_word<F>(w);
    const auto a = nf_with(p, k, rows, Schedule::leftmost);
    const auto b = nf_with(p, k, rows, Schedule::rightmost);
    TwoCopyPoly<F> diff = a;
    poly_axpy(diff, F(-1), b);
    bool ok = diff.empty();
    if (!FieldTraits<F>::exact) {
      ok = true;
      for (const auto& [dw, x] : diff) ok = ok && FieldTraits<F>::magnitude(x) <= log.tolerance();
    }
    if (!ok && witness.empty()) witness = word_text(w);
  };
  const bool exhaustive = k <= 2;
  if (exhaustive) {
    for (const auto& pat : patterns) {
      for (int s0 = 0; s0 < sym; ++s0)
        for (int s1 = 0; s1 < sym; ++s1)
          for (int s2 = 0; s2 < sym; ++s2)
            for (int s3 = 0; s3 < sym; ++s3) test(make(pat, {s0, s1, s2, s3}));
    }
  } else {
    std::mt19937 gen(20240611u);
    std::uniform_int_distribution<int> pick_pat(0, static_cast<int>(patterns.size()) - 1);
    std::uniform_int_distribution<int> pick_sym(0, sym - 1);
    for (int i = 0; i < samples; ++i) {
      const auto& pat = patterns[static_cast<std::size_t>(pick_pat(gen))];
      test(make(pat, {pick_sym(gen), pick_sym(gen), pick_sym(gen), pick_sym(gen)}));
    }
  }
  log.holds("normal form independent of the rewrite schedule (" + std::to_string(tested) +
                (exhaustive ? " words, exhaustive)" : " sampled words)"),
            "confluence", witness.empty(), witness);
}

template <class F>
void verify_mixed_commutation(const CompatiblePair<F>& pair, const ExchangeRule<F>& rule,
                              CheckLog<F>& log) {
  const int k = pair.r.dim();
  const double tol = log.tolerance();
  const auto dot = generator_matrix<F>(Copy::dot, k);
  const auto ddot = generator_matrix<F>(Copy::ddot, k);
  auto nonzero = [&](const PolyMatrix<F>& m) {
    for (const auto& [rc, p] : m.entries) {
      for (const auto& [w, x] : p) {
        if (FieldTraits<F>::magnitude(x) > tol || (FieldTraits<F>::exact && !is_zero_value(x))) {
          return first_nonzero(m);
        }
      }
    }
    return std::string();
  };

  {
    const auto T = relation_defect(ddot, pair, 1, 3);
    const auto m3 = poly_copy(dot, pair.f, 3, 3);
    const auto x = normal_form(poly_difference(poly_product(T, m3), poly_product(m3, T)), rule);
    const auto w = nonzero(x);
    log.holds("ddot relation tensor commutes with dot copy 3 (matrix form)", "poyas1", w.empty(), w);
  }
  {
    const auto T = relation_defect(dot, pair, 2, 3);
    const auto m1 = place_first(ddot, 3);
    const auto x = normal_form(poly_difference(poly_product(m1, T), poly_product(T, m1)), rule);
    const auto w = nonzero(x);
    log.holds("dot relation tensor commutes with ddot copy 1 (matrix form)", "poyas1", w.empty(), w);
  }

  // Span stability and the literal componentwise statement.
  auto spans = [&](const PolyMatrix<F>& T, const PolyMatrix<F>& gens, bool gen_first_is_normal,
                   const std::string& label) {
    std::vector<TwoCopyPoly<F>> left;   // g·T
    std::vector<TwoCopyPoly<F>> right;  // T·g
    std::size_t literal_fail = 0;
    for (const auto& [rc, t] : T.entries) {
      for (const auto& [grc, g] : gens.entries) {
        auto gt = normal_form(poly_mul(g, t), rule);
        auto tg = normal_form(poly_mul(t, g), rule);
        TwoCopyPoly<F> d = gt;
        poly_axpy(d, F(-1), tg);
        bool zero = d.empty();
        if (!FieldTraits<F>::exact) {
          zero = true;
          for (const auto& [dw, x] : d) zero = zero && FieldTraits<F>::magnitude(x) <= tol;
        }
        if (!zero) ++literal_fail;
        left.push_back(std::move(gt));
        right.push_back(std::move(tg));
      }
    }
    (void)gen_first_is_normal;
    const auto rl = span_rank(left, k, tol);
    const auto rr = span_rank(right, k, tol);
    auto both = left;
    both.insert(both.end(), right.begin(), right.end());
    const auto rb = span_rank(both, k, tol);
    const bool ok = rl == rr && rr == rb;
    log.holds(label + ": generator-times-relation span equals relation-times-generator span",
              "poyas1", ok,
              ok ? std::string()
                 : "ranks " + std::to_string(rl) + ", " + std::to_string(rr) + ", union " +
                       std::to_string(rb));
    log.note(label + ": componentwise commutators that are nonzero", "observation",
             std::to_string(literal_fail) + " of " + std::to_string(left.size()));
  };
  spans(relation_defect(ddot, pair, 1, 2), dot, true, "dot vs ddot relation");
  spans(relation_defect(dot, pair, 1, 2), ddot, false, "ddot vs dot relation");
}

template <class F>
RelationIdeal<F>::RelationIdeal(const CompatiblePair<F>& pair, double tol)
    : dim_(pair.r.dim()), tol_(tol) {
  const auto T = relation_defect(generator_matrix<F>(Copy::dot, dim_), pair, 1, 2);
  const std::size_t n = static_cast<std::size_t>(ipow_index(dim_, 4));
  std::vector<std::vector<F>> vecs;
  for (const auto& [rc, p] : T.entries) {
    std::vector<F> v(n, F(0));
    for (const auto& [w, x] : p) v[static_cast<std::size_t>(word_index(w, dim_))] += x;
    vecs.push_back(std::move(v));
  }
  // Reduced row echelon form.
  for (auto& v : vecs) {
    v = reduce(std::move(v));
    std::size_t piv = n;
    double best = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      const double m = FieldTraits<F>::magnitude(v[c]);
      if (FieldTraits<F>::exact ? !is_zero_value(v[c]) : m > std::max(tol_, best)) {
        piv = c;
        if (FieldTraits<F>::exact) break;
        best = m;
      }
    }
    if (piv == n) continue;
    const F inv = F(1) / v[piv];
    for (auto& x : v) x *= inv;
    v[piv] = F(1);
    for (auto& r : rows_) {
      const F f = r[piv];
      if (is_zero_value(f)) continue;
      for (std::size_t c = 0; c < n; ++c) r[c] -= f * v[c];
      r[piv] = F(0);
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
  }
}

template <class F>
std::vector<F> RelationIdeal<F>::reduce(std::vector<F> v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const F f = v[pivots_[i]];
    if (is_zero_value(f)) continue;
    const auto& r = rows_[i];
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (!is_zero_value(r[c])) v[c] -= f * r[c];
    }
    v[pivots_[i]] = F(0);
  }
  return v;
}

template <class F>
std::string RelationIdeal<F>::residual(const TwoCopyPoly<F>& normal) const {
  // Per bidegree, a coefficient matrix indexed by (dot part, ddot part).
  std::map<std::pair<int, int>, std::map<std::pair<Index, Index>, F>> parts;
  for (const auto& [w, x] : normal) {
    if (!is_normal(w)) throw ShapeMismatch("relation membership expects a normal form");
    const auto [d, e] = bidegree(w);
    if (d > 2 || e > 2) throw ShapeMismatch("relation membership is implemented up to degree 2 per copy");
    const TwoCopyWord wd(w.begin(), w.begin() + d);
    const TwoCopyWord we(w.begin() + d, w.end());
    parts[{d, e}][{word_index(wd, dim_), word_index(we, dim_)}] += x;
  }
  for (const auto& [deg, coeffs] : parts) {
    const auto [d, e] = deg;
    const std::size_t nd = static_cast<std::size_t>(ipow_index(dim_, 2 * d));
    const std::size_t ne = static_cast<std::size_t>(ipow_index(dim_, 2 * e));
    std::vector<F> m(nd * ne, F(0));
    for (const auto& [ij, x] : coeffs) m[static_cast<std::size_t>(ij.first) * ne + ij.second] = x;
    if (d == 2) {
      for (std::size_t c = 0; c < ne; ++c) {
        std::vector<F> col(nd);
        for (std::size_t r = 0; r < nd; ++r) col[r] = m[r * ne + c];
        col = reduce(std::move(col));
        for (std::size_t r = 0; r < nd; ++r) m[r * ne + c] = col[r];
      }
    }
    if (e == 2) {
      for (std::size_t r = 0; r < nd; ++r) {
        std::vector<F> row(m.begin() + static_cast<std::ptrdiff_t>(r * ne),
                           m.begin() + static_cast<std::ptrdiff_t>((r + 1) * ne));
        row = reduce(std::move(row));
        std::copy(row.begin(), row.end(), m.begin() + static_cast<std::ptrdiff_t>(r * ne));
      }
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      const bool nz = FieldTraits<F>::exact ? !is_zero_value(m[i]) : FieldTraits<F>::magnitude(m[i]) > tol_;
      if (nz) {
        return "bidegree (" + std::to_string(d) + "," + std::to_string(e) + ") residual " +
               FieldTraits<F>::format(m[i]) + " at coordinate " + std::to_string(i);
      }
    }
  }
  return {};
}

template <class F>
bool defect_in_ideal(const PolyMatrix<F>& image, const CompatiblePair<F>& pair,
                     const ExchangeRule<F>& rule, const RelationIdeal<F>& ideal,
                     std::string* witness) {
  const auto defect = normal_form(relation_defect(image, pair, 1, 2), rule);
  for (const auto& [rc, p] : defect.entries) {
    const auto r = ideal.residual(p);
    if (!r.empty()) {
      if (witness) *witness = "entry (" + std::to_string(rc.first) + "," + std::to_string(rc.second) + "): " + r;
      return false;
    }
  }
  return true;
}

template <class F>
void verify_hom_degree22(const CompatiblePair<F>& pair, const ExchangeRule<F>& rule,
                         CheckLog<F>& log) {
  const int k = pair.r.dim();
  const RelationIdeal<F> ideal(pair, log.tolerance());
  log.note("rank of the quadratic relation span", "observation", std::to_string(ideal.relation_rank()));
  std::string w;
  const bool ok = defect_in_ideal(coproduct_matrix<F>(k), pair, rule, ideal, &w);
  log.holds("coproduct image satisfies the quadratic relation modulo both copies", "sopP", ok, w);
  std::string w1;
  const bool dot_only = defect_in_ideal(generator_matrix<F>(Copy::dot, k), pair, rule, ideal, &w1);
  log.holds("control: the dot copy alone is accepted", "sopP", dot_only, w1);
  auto mixed = generator_matrix<F>(Copy::dot, k);
  for (const auto& [rc, p] : generator_matrix<F>(Copy::ddot, k).entries) poly_axpy(mixed.entries[rc], F(1), p);
  const bool wrong = defect_in_ideal(mixed, pair, rule, ideal);
  log.holds("control: the sum of the two copies is rejected", "sopP", !wrong,
            wrong ? "membership reported for a non-homomorphic image" : "");
}

#define QMA_INSTANTIATE_BRAIDED(F)                                                            \
  template void poly_axpy(TwoCopyPoly<F>&, const F&, const TwoCopyPoly<F>&);                  \
  template TwoCopyPoly<F> poly_mul(const TwoCopyPoly<F>&, const TwoCopyPoly<F>&);             \
  template TwoCopyPoly<F> poly_word(const TwoCopyWord&, const F&);                            \
  template PolyMatrix<F> generator_matrix(Copy, int);                                         \
  template PolyMatrix<F> coproduct_matrix(int);                                               \
  template PolyMatrix<F> place_first(const PolyMatrix<F>&, int);                              \
  template PolyMatrix<F> poly_copy(const PolyMatrix<F>&, const YangBaxterData<F>&, int, int); \
  template PolyMatrix<F> poly_product(const PolyMatrix<F>&, const PolyMatrix<F>&);            \
  template PolyMatrix<F> poly_difference(const PolyMatrix<F>&, const PolyMatrix<F>&);         \
  template PolyMatrix<F> numeric_left(const LegOperator<F>&, const PolyMatrix<F>&);           \
  template PolyMatrix<F> numeric_right(const PolyMatrix<F>&, const LegOperator<F>&);          \
  template PolyMatrix<F> relation_defect(const PolyMatrix<F>&, const CompatiblePair<F>&, int, \
                                         int);                                                \
  template ExchangeRule<F> exchange_map(const YangBaxterData<F>&);                            \
  template TwoCopyPoly<F> normal_form(const TwoCopyPoly<F>&, const ExchangeRule<F>&,          \
                                      Schedule);                                              \
  template PolyMatrix<F> normal_form(const PolyMatrix<F>&, const ExchangeRule<F>&);           \
  template void verify_exchange(const ExchangeRule<F>&, int, CheckLog<F>&);                   \
  template void verify_mixed_commutation(const CompatiblePair<F>&, const ExchangeRule<F>&,    \
                                         CheckLog<F>&);                                       \
  template class RelationIdeal<F>;                                                            \
  template bool defect_in_ideal(const PolyMatrix<F>&, const CompatiblePair<F>&,               \
                                const ExchangeRule<F>&, const RelationIdeal<F>&,              \
                                std::string*);                                                \
  template void verify_hom_degree22(const CompatiblePair<F>&, const ExchangeRule<F>&,         \
                                    CheckLog<F>&);

QMA_INSTANTIATE_BRAIDED(Rational)
QMA_INSTANTIATE_BRAIDED(double)

}  // namespace qma
