#pragma once

#include <vector>

#include "qma/report.hpp"
#include "qma/scalars.hpp"
#include "qma/tensor.hpp"

namespace qma {

// A Yang–Baxter matrix together with its skew-inverse data. The "_inv_side"
// members belong to R⁻¹.
template <class F>
struct YangBaxterData {
  LegOperator<F> R;
  LegOperator<F> R_inv;
  LegOperator<F> psi;           // Ψ_R: Tr₂ R₁Ψ₂ = Tr₂ Ψ₁R₂ = P
  LegOperator<F> psi_inv_side;  // Ψ_{R⁻¹}
  LegOperator<F> C;             // Tr₁ Ψ_R
  LegOperator<F> D;             // Tr₂ Ψ_R, the R-trace weight
  LegOperator<F> C_inv_side;
  LegOperator<F> D_inv_side;

  int dim() const { return R.dim(); }
};

template <class F>
struct BmwCertificate {
  LegOperator<F> K;
  DeformParams<F> params;
  CheckLog<F> checks{"bmw"};
};

template <class F>
struct CompatiblePair {
  YangBaxterData<F> r;
  YangBaxterData<F> f;
  YangBaxterData<F> twisted;  // R_F = F⁻¹RF with its own skew-inverse data
  bool f_is_flip = false;
  bool f_is_r = false;
  CheckLog<F> checks{"bmw"};
};

// Braid form P·R_FRT of the standard O_q(k) matrix, not yet certified.
template <class F>
LegOperator<F> transcribe_standard_O(const DeformParams<F>& p);

// The transcription gated by skew inversion and bmw_certify; throws
// ConstructionInvalid when the gate fails.
template <class F>
LegOperator<F> standard_O(const DeformParams<F>& p, double tol = 0.0);

template <class F>
YangBaxterData<F> flip(int dim);

// Solves for Ψ_R and Ψ_{R⁻¹} exactly and assembles C and D for both.
// Throws ConstructionInvalid (R singular), NotSkewInvertible or NotStrict.
template <class F>
YangBaxterData<F> skew_invert(const LegOperator<F>& R, double tol = 0.0);

// Braid relation, both skew-inverse conditions, the C/D trace properties
// and strictness, recorded into `log`.
template <class F>
void certify_yang_baxter(const YangBaxterData<F>& data, CheckLog<F>& log);

// K from the quadratic formula, then every BMW-type relation. Throws
// NotBmwType naming the first failing relation.
template <class F>
BmwCertificate<F> bmw_certify(const YangBaxterData<F>& data, const DeformParams<F>& p,
                              double tol = 0.0);

// K = (q - R)(1/q + R) / (μ(q - 1/q)).
template <class F>
LegOperator<F> kappa_of(const LegOperator<F>& R, const DeformParams<F>& p);

// Twist relations and the D⊗D commutation; throws NotCompatible. Also
// builds and checks R_F.
template <class F>
CompatiblePair<F> make_pair(const YangBaxterData<F>& r, const YangBaxterData<F>& f,
                            double tol = 0.0);

template <class F>
LegOperator<F> twist(const CompatiblePair<F>& pair) {
  return pair.twisted.R;
}

// Positions of the factors of Z^(i) = (F₁…F_{i-1})(F₁…F_{i-2})…(F₁).
std::vector<int> z_word(int i);

template <class F>
LegOperator<F> z_string(const LegOperator<F>& Fop, int i);

// Checks that both recursions for Z^(i) agree and R_j Z^(i) = Z^(i)(R_F)_{i-j}.
template <class F>
void certify_z_strings(const CompatiblePair<F>& pair, int max_i, CheckLog<F>& log);

// ρ_R of a braid word: +j ↦ R_j, -j ↦ R_j⁻¹, multiplied left to right.
template <class F>
LegOperator<F> braid_image(const YangBaxterData<F>& data, const std::vector<int>& word,
                           int strands);

// ∏_{j=1..n} (D)_j.
template <class F>
LegOperator<F> d_product(const LegOperator<F>& D, int n);

}  // namespace qma
