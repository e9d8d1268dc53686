#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qma/report.hpp"
#include "qma/ybkit.hpp"

namespace qma {

// Generators of the two-copy algebra: Ṁ^a_b (dot) and M̈^a_b (ddot).
enum class Copy : std::uint8_t { dot = 0, ddot = 1 };

struct Symbol {
  Copy copy = Copy::dot;
  std::uint8_t a = 0;  // upper (row) index
  std::uint8_t b = 0;  // lower (column) index
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

using TwoCopyWord = std::vector<Symbol>;

// (number of dot symbols, number of ddot symbols)
std::pair<int, int> bidegree(const TwoCopyWord& w);
// True when every dot symbol precedes every ddot symbol.
bool is_normal(const TwoCopyWord& w);

// Noncommutative polynomial; no zero coefficients are stored.
template <class F>
using TwoCopyPoly = std::map<TwoCopyWord, F>;

template <class F>
void poly_axpy(TwoCopyPoly<F>& acc, const F& c, const TwoCopyPoly<F>& x);
template <class F>
TwoCopyPoly<F> poly_mul(const TwoCopyPoly<F>& x, const TwoCopyPoly<F>& y);
template <class F>
TwoCopyPoly<F> poly_word(const TwoCopyWord& w, const F& c = F(1));

// Matrix with polynomial entries on V^{⊗legs}, used for M̈₁̄, Ṁ₂̄ and the
// like. Missing entries are zero.
template <class F>
struct PolyMatrix {
  int dim = 0;
  int legs = 0;
  std::map<std::pair<Index, Index>, TwoCopyPoly<F>> entries;
};

// The generator matrix of one copy on a single leg.
template <class F>
PolyMatrix<F> generator_matrix(Copy c, int dim);
// Δ(M)^a_b = Σ_c Ṁ^a_c M̈^c_b.
template <class F>
PolyMatrix<F> coproduct_matrix(int dim);
// X on leg 1 of `legs` legs.
template <class F>
PolyMatrix<F> place_first(const PolyMatrix<F>& x, int legs);
// X_ī = F_{i-1}…F_1 X_1 F_1⁻¹…F_{i-1}⁻¹ on `legs` legs.
template <class F>
PolyMatrix<F> poly_copy(const PolyMatrix<F>& x, const YangBaxterData<F>& f, int i, int legs);
template <class F>
PolyMatrix<F> poly_product(const PolyMatrix<F>& x, const PolyMatrix<F>& y);
template <class F>
PolyMatrix<F> poly_difference(const PolyMatrix<F>& x, const PolyMatrix<F>& y);
template <class F>
PolyMatrix<F> numeric_left(const LegOperator<F>& n, const PolyMatrix<F>& x);
template <class F>
PolyMatrix<F> numeric_right(const PolyMatrix<F>& x, const LegOperator<F>& n);
// R_pos X_ī X_(i+1)bar - X_ī X_(i+1)bar R_pos with ī = pos, on `legs` legs.
template <class F>
PolyMatrix<F> relation_defect(const PolyMatrix<F>& x, const CompatiblePair<F>& pair, int pos,
                              int legs);

// The rewriting M̈^a_b Ṁ^c_d ↦ Σ coeff · Ṁ^{c'}_{d'} M̈^{a'}_{b'} as a 4-leg
// operator: row (a,b,c,d) for the ddot-dot word, column (c',d',a',b') for the
// dot-ddot word. `inverse` rewrites the other way.
template <class F>
struct ExchangeRule {
  int dim = 0;
  LegOperator<F> forward;
  LegOperator<F> inverse;
};

// Solves M̈₁F₁Ṁ₁F₁⁻¹ = F₁Ṁ₁F₁⁻¹M̈₁ componentwise. Throws ExchangeNotInvertible.
template <class F>
ExchangeRule<F> exchange_map(const YangBaxterData<F>& f);

enum class Schedule { leftmost, rightmost };

// Rewrites adjacent (ddot, dot) pairs until every word is dot-first.
template <class F>
TwoCopyPoly<F> normal_form(const TwoCopyPoly<F>& poly, const ExchangeRule<F>& rule,
                           Schedule schedule = Schedule::leftmost);
template <class F>
PolyMatrix<F> normal_form(const PolyMatrix<F>& m, const ExchangeRule<F>& rule);

// Round trip of the rule and order independence of normal_form on
// degree-(2,2) words: exhaustive for k = 2, `samples` seeded words otherwise.
template <class F>
void verify_exchange(const ExchangeRule<F>& rule, int samples, CheckLog<F>& log);

// Ṁ against the ddot relation tensor and M̈ against the dot one, in matrix
// form and as span stability; the literal componentwise form is recorded as
// an observation.
template <class F>
void verify_mixed_commutation(const CompatiblePair<F>& pair, const ExchangeRule<F>& rule,
                              CheckLog<F>& log);

// Membership of normal-form polynomials with per-copy degree ≤ 2 in the
// two-sided ideal generated by both copies' quadratic relations.
template <class F>
class RelationIdeal {
 public:
  RelationIdeal(const CompatiblePair<F>& pair, double tol);
  // Empty string on membership, otherwise a witness.
  std::string residual(const TwoCopyPoly<F>& normal) const;
  std::size_t relation_rank() const { return pivots_.size(); }

 private:
  std::vector<F> reduce(std::vector<F> v) const;
  int dim_;
  double tol_;
  std::vector<std::vector<F>> rows_;  // reduced row echelon basis of the relation span
  std::vector<std::size_t> pivots_;
};

// Normal form of R₁Δ₁̄Δ₂̄ - Δ₁̄Δ₂̄R₁ lies in the relation ideal.
template <class F>
void verify_hom_degree22(const CompatiblePair<F>& pair, const ExchangeRule<F>& rule,
                         CheckLog<F>& log);
// The same test for an arbitrary candidate image of M (negative controls).
template <class F>
bool defect_in_ideal(const PolyMatrix<F>& image, const CompatiblePair<F>& pair,
                     const ExchangeRule<F>& rule, const RelationIdeal<F>& ideal,
                     std::string* witness = nullptr);

}  // namespace qma
