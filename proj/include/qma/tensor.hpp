#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "qma/field.hpp"

namespace qma {

using Index = std::uint64_t;

// Sparse operator on V^{⊗legs}, dim V = dim. Basis indices are mixed-radix
// with leg 1 most significant. Entries are kept sorted by (row, col) with no
// stored zeros, so equality is entrywise equality.
template <class F>
class LegOperator {
 public:
  struct Entry {
    Index row = 0;
    Index col = 0;
    F value{};
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  LegOperator() = default;
  // The zero operator.
  LegOperator(int dim, int legs);
  // Sorts, merges duplicates and drops zeros.
  LegOperator(int dim, int legs, std::vector<Entry> entries);

  int dim() const { return dim_; }
  int legs() const { return legs_; }
  Index size() const;  // dim^legs
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  F at(Index row, Index col) const;
  // Scalar value of a 0-leg operator.
  F scalar() const;

  friend bool operator==(const LegOperator&, const LegOperator&) = default;

 private:
  int dim_ = 1;
  int legs_ = 0;
  std::vector<Entry> entries_;
};

template <class F>
LegOperator<F> identity(int dim, int legs);
template <class F>
LegOperator<F> scalar_operator(int dim, const F& value);
// P(u⊗v) = v⊗u.
template <class F>
LegOperator<F> permutation_flip(int dim);
// Dense k×k matrix given row-major, as a 1-leg operator.
template <class F>
LegOperator<F> from_dense(int dim, int legs, const std::vector<F>& values);

// op on legs pos..pos+m-1 (1-based), identity elsewhere.
template <class F>
LegOperator<F> embed_at(const LegOperator<F>& op, int pos, int total);
// Relabel legs: leg i of the result is leg perm[i-1] of op (1-based labels).
template <class F>
LegOperator<F> permute_legs(const LegOperator<F>& op, std::span<const int> perm);
// Kronecker product a ⊗ b (a on the leading legs).
template <class F>
LegOperator<F> tensor(const LegOperator<F>& a, const LegOperator<F>& b);

// a·b (b applied first).
template <class F>
LegOperator<F> compose(const LegOperator<F>& a, const LegOperator<F>& b);
template <class F>
LegOperator<F> add(const LegOperator<F>& a, const LegOperator<F>& b);
template <class F>
LegOperator<F> subtract(const LegOperator<F>& a, const LegOperator<F>& b);
template <class F>
LegOperator<F> scale(const F& c, const LegOperator<F>& a);

// embed_at(local, pos, x.legs()) · x without materialising the embedding.
template <class F>
LegOperator<F> apply_left(const LegOperator<F>& local, int pos, const LegOperator<F>& x);
// x · embed_at(local, pos, x.legs()).
template <class F>
LegOperator<F> apply_right(const LegOperator<F>& x, const LegOperator<F>& local, int pos);

// Partial trace over the listed legs (1-based); remaining legs keep order.
template <class F>
LegOperator<F> plain_trace(const LegOperator<F>& op, std::span<const int> legset);
// Tr over legset of (weight on every traced leg) · op.
template <class F>
LegOperator<F> weighted_trace(const LegOperator<F>& op, std::span<const int> legset,
                              const LegOperator<F>& weight);
// Sum of the diagonal.
template <class F>
F full_trace(const LegOperator<F>& op);

// Rank. Exact fields use fraction-free elimination and ignore tol; inexact
// fields treat |x| <= tol * scale as zero.
template <class F>
std::size_t rank(const LegOperator<F>& op, double tol = 0.0);
template <>
std::size_t rank(const LegOperator<Rational>& op, double tol);
template <>
std::size_t rank(const LegOperator<double>& op, double tol);
inline std::size_t exact_rank(const LegOperator<Rational>& op) { return rank(op); }

template <class F>
LegOperator<F> operator*(const LegOperator<F>& a, const LegOperator<F>& b) {
  return compose(a, b);
}
template <class F>
LegOperator<F> operator+(const LegOperator<F>& a, const LegOperator<F>& b) {
  return add(a, b);
}
template <class F>
LegOperator<F> operator-(const LegOperator<F>& a, const LegOperator<F>& b) {
  return subtract(a, b);
}
template <class F>
LegOperator<F> operator*(const std::type_identity_t<F>& c, const LegOperator<F>& a) {
  return scale(c, a);
}

// Maximum |a - b| over all entries plus a description of the worst one.
struct Discrepancy {
  double max_abs = 0.0;
  std::size_t count = 0;  // number of differing entries
  std::string witness;    // empty when identical
};
template <class F>
Discrepancy compare(const LegOperator<F>& a, const LegOperator<F>& b);

template <class To>
LegOperator<To> convert(const LegOperator<Rational>& op);

// One factor of an operator word: `op` acting on legs pos..pos+legs-1.
template <class F>
struct Placed {
  const LegOperator<F>* op;
  int pos;
};

// f1·f2·…·fm·x, applied right to left through the leg-local kernel.
template <class F>
LegOperator<F> apply_word_left(std::span<const Placed<F>> word, LegOperator<F> x) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = apply_left(*it->op, it->pos, x);
  return x;
}
// x·f1·f2·…·fm.
template <class F>
LegOperator<F> apply_word_right(LegOperator<F> x, std::span<const Placed<F>> word) {
  for (const auto& f : word) x = apply_right(x, *f.op, f.pos);
  return x;
}
// f1·f2·…·fm on `legs` legs.
template <class F>
LegOperator<F> word_product(std::span<const Placed<F>> word, int dim, int legs) {
  return apply_word_right(identity<F>(dim, legs), word);
}

// Digits of a basis index, leg 1 first.
std::vector<int> index_digits(Index idx, int dim, int legs);

}  // namespace qma
