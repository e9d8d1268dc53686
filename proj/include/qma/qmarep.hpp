#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qma/idempotents.hpp"
#include "qma/report.hpp"
#include "qma/ybkit.hpp"

namespace qma {

enum class RepTag { alpha_plus, alpha_minus, beta, tensor };
std::string_view rep_name(RepTag tag);

// A representation of the QM-algebra M(R,F) on V^{⊗rep_legs}. The image of
// the quantum matrix acts on (rep legs, matrix leg), rep legs first; the
// generator M^a_b maps to the block with matrix indices (a, b). Products of
// generators map to compositions in the same order: α(xy) = α(x)∘α(y).
template <class F>
struct Representation {
  CompatiblePair<F> pair;
  RepTag tag = RepTag::alpha_plus;
  int rep_legs = 1;
  LegOperator<F> r_eps;    // R or R⁻¹ for α±, empty otherwise
  LegOperator<F> M_image;  // R^ε F for α±, F² for β
  int dim() const { return pair.r.dim(); }
  bool is_alpha() const { return tag == RepTag::alpha_plus || tag == RepTag::alpha_minus; }
};

// Images of the characteristic subalgebra generators; each acts on the rep
// legs. e runs over 0..k+1, p over 0..k, h over 0..(depth of the s tower).
template <class F>
struct CharImages {
  std::vector<LegOperator<F>> p;
  std::vector<LegOperator<F>> e;
  std::vector<LegOperator<F>> h;
  LegOperator<F> g;
  LegOperator<F> g_inv;
  LegOperator<F> det;  // e[k]
};

template <class F>
struct StructureMatrices {
  LegOperator<F> G;
  LegOperator<F> G_inv;
  LegOperator<F> O;
  LegOperator<F> O_inv;
};

// Builds α± (tag alpha_plus / alpha_minus) or β and records the imaged
// quadratic relation R₁M̄₁M̄₂ = M̄₁M̄₂R₁.
template <class F>
Representation<F> make_rep(const CompatiblePair<F>& pair, RepTag tag, CheckLog<F>& log);

// α(M̄₁…M̄_j) on rep legs + j matrix legs. α± use the closed form
// R^ε₀…R^ε_{j-1}F_{j-1}…F₀; other representations use the copies.
template <class F>
LegOperator<F> string_image(const Representation<F>& rep, int j);
// The same string assembled from the copies M̄_i = F_{i-1}M̄_{i-1}F_{i-1}⁻¹.
template <class F>
LegOperator<F> copies_string(const Representation<F>& rep, int j);
// α(M̄_i) alone, or α(M_underline_i) with M_underline_{i+1} = F_i⁻¹ M_underline_i F_i.
template <class F>
LegOperator<F> copy_image(const Representation<F>& rep, int i, bool underline);

// ch(X) = Tr_R over the matrix legs of α(M̄₁…M̄_n)·X. Throws ShapeMismatch.
template <class F>
LegOperator<F> ch_image(const Representation<F>& rep, const LegOperator<F>& element);

// Power, elementary and complete sums, the contraction and its inverse.
// Records commutativity, p₀ = μη and e_{k+1} = 0. Throws SingularContraction.
template <class F>
CharImages<F> char_images(const Representation<F>& rep, const IdempotentTower<F>& tower,
                          CheckLog<F>& log);

// G, G⁻¹, O, O⁻¹ of an O(k)-type pair, with their mutual relations.
template <class F>
StructureMatrices<F> structure_matrices(const CompatiblePair<F>& pair,
                                        const IdempotentTower<F>& tower, CheckLog<F>& log);

// α(g) = μ²G⁻¹, α(e_k) = (-1)^(k-1) q^(k(1-k)) O⁻¹ and, for the pair {R,R},
// scalar images. Representations other than α± get observations only.
template <class F>
void verify_images(const Representation<F>& rep, const CharImages<F>& images,
                   const StructureMatrices<F>& sm, const DeformParams<F>& p, CheckLog<F>& log);

// α(M⁻¹) on (rep legs, matrix leg); records M⁻¹M = MM⁻¹ = I and the
// permutation relation of g. Throws SingularContraction.
template <class F>
LegOperator<F> minv_image(const Representation<F>& rep, const CharImages<F>& images,
                          const StructureMatrices<F>& sm, const DeformParams<F>& p,
                          CheckLog<F>& log);

// g^(k-i) e_i = e_k e_{k-i} for i = 0..k-1.
template <class F>
void verify_reciprocal(const CharImages<F>& images, int k, CheckLog<F>& log);

// M e_k = e_k (O⁻¹MO), and the α+ form R₀F₀O₀⁻¹ = O₀⁻¹O₁⁻¹R₀F₀O₁.
template <class F>
void verify_det_commutation(const Representation<F>& rep, const CharImages<F>& images,
                            const StructureMatrices<F>& sm, CheckLog<F>& log);

struct ResolutionResult {
  int ell = 0;
  bool even = false;
  bool hypothesis_met = false;  // even k: α(e_ℓ) invertible
  int tau = 0;                  // component sign, 0 if not determined
};

// Even k = 2ℓ: component sign τ and e_{ℓ+i} = τ g^i e_{ℓ-i}. Odd k = 2ℓ-1:
// g^(1/2) := g^(1-ℓ) e_{2ℓ-1} and e_{ℓ+i} = (g^(1/2))^(2i+1) e_{ℓ-1-i}.
template <class F>
ResolutionResult verify_resolution(const CharImages<F>& images, const StructureMatrices<F>& sm,
                                   const DeformParams<F>& p, CheckLog<F>& log);

// Lemma-level string identities in the representation: the contractor and
// antisymmetrizer eigen-forms of the string, the plain-trace determinant
// form and M̄_j Z^(i) = Z^(i) M_underline_{i-j+1}.
template <class F>
void verify_string_forms(const Representation<F>& rep, const CharImages<F>& images,
                         const IdempotentTower<F>& tower, int z_max, CheckLog<F>& log);

// (α₁⊗α₂)∘Δ for flip pairs: M ↦ Σ_c α₁(M^a_c) ⊗ α₂(M^c_b). Throws NotFlipPair.
template <class F>
Representation<F> tensor_rep(const Representation<F>& a, const Representation<F>& b,
                             CheckLog<F>& log);

// Group-likeness at image level: Δe_k = q^(k(k-1)) e_k⊗e_k, Δg = μ⁻² g⊗g.
template <class F>
void verify_group_like(const CharImages<F>& product, const CharImages<F>& a,
                       const CharImages<F>& b, const DeformParams<F>& p, CheckLog<F>& log);

// X^e for square operators; negative e inverts. Empty on a singular base.
template <class F>
std::optional<LegOperator<F>> operator_power(const LegOperator<F>& x, int e);

}  // namespace qma
