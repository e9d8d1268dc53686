#include "qma/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "qma/errors.hpp"

namespace qma {

namespace {

Index ipow_index(int base, int e) {
  Index out = 1;
  for (int i = 0; i < e; ++i) out *= static_cast<Index>(base);
  return out;
}

template <class F>
void canonicalize(std::vector<typename LegOperator<F>::Entry>& entries) {
  using Entry = typename LegOperator<F>::Entry;
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i + 1;
    F sum = std::move(entries[i].value);
    while (j < entries.size() && entries[j].row == entries[i].row &&
           entries[j].col == entries[i].col) {
      sum += entries[j].value;
      ++j;
    }
    if (!FieldTraits<F>::is_zero(sum)) {
      entries[out].row = entries[i].row;
      entries[out].col = entries[i].col;
      entries[out].value = std::move(sum);
      ++out;
    }
    i = j;
  }
  entries.resize(out);
}

template <class F>
void require_same_shape(const LegOperator<F>& a, const LegOperator<F>& b, const char* what) {
  if (a.dim() != b.dim() || a.legs() != b.legs()) {
    throw ShapeMismatch(std::string(what) + ": shapes (" + std::to_string(a.dim()) + "," +
                        std::to_string(a.legs()) + ") and (" + std::to_string(b.dim()) + "," +
                        std::to_string(b.legs()) + ") differ");
  }
}

// Place values dim^(legs-1), ..., 1.
std::vector<Index> place_values(int dim, int legs) {
  std::vector<Index> pv(static_cast<std::size_t>(legs));
  Index p = 1;
  for (int i = legs - 1; i >= 0; --i) {
    pv[static_cast<std::size_t>(i)] = p;
    p *= static_cast<Index>(dim);
  }
  return pv;
}

std::vector<bool> leg_mask(std::span<const int> legset, int legs) {
  std::vector<bool> mask(static_cast<std::size_t>(legs), false);
  for (int leg : legset) {
    if (leg < 1 || leg > legs) {
      throw LegRangeError("trace leg " + std::to_string(leg) + " outside 1.." +
                          std::to_string(legs));
    }
    if (mask[static_cast<std::size_t>(leg - 1)]) {
      throw LegRangeError("trace leg " + std::to_string(leg) + " listed twice");
    }
    mask[static_cast<std::size_t>(leg - 1)] = true;
  }
  return mask;
}

}  // namespace

std::vector<int> index_digits(Index idx, int dim, int legs) {
  std::vector<int> d(static_cast<std::size_t>(legs));
  for (int i = legs - 1; i >= 0; --i) {
    d[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<Index>(dim));
    idx /= static_cast<Index>(dim);
  }
  return d;
}

template <class F>
LegOperator<F>::LegOperator(int dim, int legs) : dim_(dim), legs_(legs) {
  if (dim < 1 || legs < 0) throw ShapeMismatch("invalid operator shape");
}

template <class F>
LegOperator<F>::LegOperator(int dim, int legs, std::vector<Entry> entries)
    : dim_(dim), legs_(legs), entries_(std::move(entries)) {
  if (dim < 1 || legs < 0) throw ShapeMismatch("invalid operator shape");
  const Index n = size();
  for (const auto& e : entries_) {
    if (e.row >= n || e.col >= n) throw ShapeMismatch("entry index out of range");
  }
  canonicalize<F>(entries_);
}

template <class F>
Index LegOperator<F>::size() const {
  return ipow_index(dim_, legs_);
}

template <class F>
F LegOperator<F>::at(Index row, Index col) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{row, col},
                             [](const Entry& e, const std::pair<Index, Index>& key) {
                               return e.row != key.first ? e.row < key.first
                                                         : e.col < key.second;
                             });
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return F(0);
}

template <class F>
F LegOperator<F>::scalar() const {
  if (legs_ != 0) throw ShapeMismatch("scalar() on an operator with legs");
  return entries_.empty() ? F(0) : entries_.front().value;
}

template <class F>
LegOperator<F> identity(int dim, int legs) {
  LegOperator<F> shape(dim, legs);
  std::vector<typename LegOperator<F>::Entry> e;
  const Index n = shape.size();
  e.reserve(n);
  for (Index i = 0; i < n; ++i) e.push_back({i, i, F(1)});
  return LegOperator<F>(dim, legs, std::move(e));
}

template <class F>
LegOperator<F> scalar_operator(int dim, const F& value) {
  return LegOperator<F>(dim, 0, {{0, 0, value}});
}

template <class F>
LegOperator<F> permutation_flip(int dim) {
  std::vector<typename LegOperator<F>::Entry> e;
  const Index d = static_cast<Index>(dim);
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) e.push_back({a * d + b, b * d + a, F(1)});
  }
  return LegOperator<F>(dim, 2, std::move(e));
}

template <class F>
LegOperator<F> from_dense(int dim, int legs, const std::vector<F>& values) {
  LegOperator<F> shape(dim, legs);
  const Index n = shape.size();
  if (values.size() != n * n) throw ShapeMismatch("from_dense: wrong value count");
  std::vector<typename LegOperator<F>::Entry> e;
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) e.push_back({r, c, values[r * n + c]});
  }
  return LegOperator<F>(dim, legs, std::move(e));
}

template <class F>
LegOperator<F> embed_at(const LegOperator<F>& op, int pos, int total) {
  const int m = op.legs();
  if (pos < 1 || pos + m - 1 > total) {
    throw LegRangeError("embed_at: legs " + std::to_string(pos) + ".." +
                        std::to_string(pos + m - 1) + " outside 1.." + std::to_string(total));
  }
  const int dim = op.dim();
  const Index left = ipow_index(dim, pos - 1);
  const Index mid = ipow_index(dim, m);
  const Index right = ipow_index(dim, total - pos - m + 1);
  std::vector<typename LegOperator<F>::Entry> e;
  e.reserve(op.nnz() * left * right);
  for (Index l = 0; l < left; ++l) {
    for (const auto& x : op.entries()) {
      for (Index r = 0; r < right; ++r) {
        e.push_back({(l * mid + x.row) * right + r, (l * mid + x.col) * right + r, x.value});
      }
    }
  }
  return LegOperator<F>(dim, total, std::move(e));
}

template <class F>
LegOperator<F> permute_legs(const LegOperator<F>& op, std::span<const int> perm) {
  const int n = op.legs();
  if (static_cast<int>(perm.size()) != n) throw LegRangeError("permute_legs: wrong arity");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int p : perm) {
    if (p < 1 || p > n || seen[static_cast<std::size_t>(p - 1)]) {
      throw LegRangeError("permute_legs: not a permutation");
    }
    seen[static_cast<std::size_t>(p - 1)] = true;
  }
  const auto pv = place_values(op.dim(), n);
  auto relabel = [&](Index idx) {
    const auto d = index_digits(idx, op.dim(), n);
    Index out = 0;
    for (int i = 0; i < n; ++i) {
      out += static_cast<Index>(d[static_cast<std::size_t>(perm[i] - 1)]) *
             pv[static_cast<std::size_t>(i)];
    }
    return out;
  };
  std::vector<typename LegOperator<F>::Entry> e;
  e.reserve(op.nnz());
  for (const auto& x : op.entries()) e.push_back({relabel(x.row), relabel(x.col), x.value});
  return LegOperator<F>(op.dim(), n, std::move(e));
}

template <class F>
LegOperator<F> tensor(const LegOperator<F>& a, const LegOperator<F>& b) {
  if (a.dim() != b.dim()) throw ShapeMismatch("tensor: dimension mismatch");
  const Index nb = b.size();
  std::vector<typename LegOperator<F>::Entry> e;
  e.reserve(a.nnz() * b.nnz());
  for (const auto& x : a.entries()) {
    for (const auto& y : b.entries()) {
      e.push_back({x.row * nb + y.row, x.col * nb + y.col, x.value * y.value});
    }
  }
  return LegOperator<F>(a.dim(), a.legs() + b.legs(), std::move(e));
}

template <class F>
LegOperator<F> compose(const LegOperator<F>& a, const LegOperator<F>& b) {
  require_same_shape(a, b, "compose");
  using Entry = typename LegOperator<F>::Entry;
  const auto& be = b.entries();
  std::unordered_map<Index, std::pair<std::size_t, std::size_t>> brows;
  brows.reserve(be.size());
  for (std::size_t i = 0; i < be.size();) {
    std::size_t j = i;
    while (j < be.size() && be[j].row == be[i].row) ++j;
    brows.emplace(be[i].row, std::pair{i, j});
    i = j;
  }
  std::vector<Entry> out;
  std::unordered_map<Index, F> acc;
  std::vector<Index> cols;
  const auto& ae = a.entries();
  for (std::size_t i = 0; i < ae.size();) {
    const Index row = ae[i].row;
    acc.clear();
    for (; i < ae.size() && ae[i].row == row; ++i) {
      auto it = brows.find(ae[i].col);
      if (it == brows.end()) continue;
      for (std::size_t t = it->second.first; t < it->second.second; ++t) {
        auto [slot, fresh] = acc.try_emplace(be[t].col);
        if (fresh) {
          slot->second = ae[i].value * be[t].value;
        } else {
          slot->second += ae[i].value * be[t].value;
        }
      }
    }
    cols.clear();
    for (const auto& [c, v] : acc) {
      if (!FieldTraits<F>::is_zero(v)) cols.push_back(c);
    }
    std::sort(cols.begin(), cols.end());
    for (Index c : cols) out.push_back({row, c, std::move(acc[c])});
  }
  return LegOperator<F>(a.dim(), a.legs(), std::move(out));
}

template <class F>
LegOperator<F> add(const LegOperator<F>& a, const LegOperator<F>& b) {
  require_same_shape(a, b, "add");
  auto e = a.entries();
  e.insert(e.end(), b.entries().begin(), b.entries().end());
  return LegOperator<F>(a.dim(), a.legs(), std::move(e));
}

template <class F>
LegOperator<F> subtract(const LegOperator<F>& a, const LegOperator<F>& b) {
  require_same_shape(a, b, "subtract");
  auto e = a.entries();
  e.reserve(e.size() + b.nnz());
  for (const auto& x : b.entries()) e.push_back({x.row, x.col, -x.value});
  return LegOperator<F>(a.dim(), a.legs(), std::move(e));
}

template <class F>
LegOperator<F> scale(const F& c, const LegOperator<F>& a) {
  if (FieldTraits<F>::is_zero(c)) return LegOperator<F>(a.dim(), a.legs());
  auto e = a.entries();
  for (auto& x : e) x.value *= c;
  return LegOperator<F>(a.dim(), a.legs(), std::move(e));
}

template <class F>
LegOperator<F> apply_left(const LegOperator<F>& local, int pos, const LegOperator<F>& x) {
  const int m = local.legs();
  const int n = x.legs();
  if (local.dim() != x.dim()) throw ShapeMismatch("apply_left: dimension mismatch");
  if (pos < 1 || pos + m - 1 > n) throw LegRangeError("apply_left: legs out of range");
  const Index mid = ipow_index(x.dim(), m);
  const Index right = ipow_index(x.dim(), n - pos - m + 1);
  std::vector<std::vector<std::pair<Index, const F*>>> bycol(mid);
  for (const auto& y : local.entries()) bycol[y.col].push_back({y.row, &y.value});
  std::vector<typename LegOperator<F>::Entry> e;
  for (const auto& z : x.entries()) {
    const Index rr = z.row % right;
    const Index m0 = (z.row / right) % mid;
    const Index l = z.row / right / mid;
    for (const auto& [lrow, val] : bycol[m0]) {
      e.push_back({(l * mid + lrow) * right + rr, z.col, *val * z.value});
    }
  }
  return LegOperator<F>(x.dim(), n, std::move(e));
}

template <class F>
LegOperator<F> apply_right(const LegOperator<F>& x, const LegOperator<F>& local, int pos) {
  const int m = local.legs();
  const int n = x.legs();
  if (local.dim() != x.dim()) throw ShapeMismatch("apply_right: dimension mismatch");
  if (pos < 1 || pos + m - 1 > n) throw LegRangeError("apply_right: legs out of range");
  const Index mid = ipow_index(x.dim(), m);
  const Index right = ipow_index(x.dim(), n - pos - m + 1);
  std::vector<std::vector<std::pair<Index, const F*>>> byrow(mid);
  for (const auto& y : local.entries()) byrow[y.row].push_back({y.col, &y.value});
  std::vector<typename LegOperator<F>::Entry> e;
  for (const auto& z : x.entries()) {
    const Index rr = z.col % right;
    const Index m0 = (z.col / right) % mid;
    const Index l = z.col / right / mid;
    for (const auto& [lcol, val] : byrow[m0]) {
      e.push_back({z.row, (l * mid + lcol) * right + rr, z.value * *val});
    }
  }
  return LegOperator<F>(x.dim(), n, std::move(e));
}

namespace {

template <class F>
LegOperator<F> trace_impl(const LegOperator<F>& op, std::span<const int> legset,
                          const std::vector<F>* weight) {
  const int n = op.legs();
  const int dim = op.dim();
  const auto mask = leg_mask(legset, n);
  const int kept = n - static_cast<int>(legset.size());
  const auto pv_kept = place_values(dim, kept);
  std::vector<typename LegOperator<F>::Entry> e;
  for (const auto& x : op.entries()) {
    const auto rd = index_digits(x.row, dim, n);
    const auto cd = index_digits(x.col, dim, n);
    F factor(1);
    bool skip = false;
    Index r = 0;
    Index c = 0;
    int slot = 0;
    for (int leg = 0; leg < n; ++leg) {
      const auto u = static_cast<std::size_t>(leg);
      if (mask[u]) {
        if (weight == nullptr) {
          if (rd[u] != cd[u]) {
            skip = true;
            break;
          }
        } else {
          const F& w = (*weight)[static_cast<std::size_t>(cd[u] * dim + rd[u])];
          if (FieldTraits<F>::is_zero(w)) {
            skip = true;
            break;
          }
          factor *= w;
        }
      } else {
        r += static_cast<Index>(rd[u]) * pv_kept[static_cast<std::size_t>(slot)];
        c += static_cast<Index>(cd[u]) * pv_kept[static_cast<std::size_t>(slot)];
        ++slot;
      }
    }
    if (skip) continue;
    e.push_back({r, c, factor * x.value});
  }
  return LegOperator<F>(dim, kept, std::move(e));
}

}  // namespace

template <class F>
LegOperator<F> plain_trace(const LegOperator<F>& op, std::span<const int> legset) {
  return trace_impl<F>(op, legset, nullptr);
}

template <class F>
LegOperator<F> weighted_trace(const LegOperator<F>& op, std::span<const int> legset,
                              const LegOperator<F>& weight) {
  if (weight.legs() != 1 || weight.dim() != op.dim()) {
    throw ShapeMismatch("weighted_trace: weight must be a 1-leg operator on the same space");
  }
  std::vector<F> w(static_cast<std::size_t>(op.dim() * op.dim()), F(0));
  for (const auto& x : weight.entries()) {
    w[static_cast<std::size_t>(x.row * static_cast<Index>(op.dim()) + x.col)] = x.value;
  }
  return trace_impl<F>(op, legset, &w);
}

template <class F>
F full_trace(const LegOperator<F>& op) {
  F t(0);
  for (const auto& x : op.entries()) {
    if (x.row == x.col) t += x.value;
  }
  return t;
}

namespace {

// Sparse rows sorted by column.
template <class T>
using SparseRow = std::vector<std::pair<Index, T>>;

template <class T>
std::vector<SparseRow<T>> rows_of(const std::vector<typename LegOperator<T>::Entry>& entries) {
  std::vector<SparseRow<T>> rows;
  for (std::size_t i = 0; i < entries.size();) {
    SparseRow<T> row;
    const Index r = entries[i].row;
    for (; i < entries.size() && entries[i].row == r; ++i) {
      row.push_back({entries[i].col, entries[i].value});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Fraction-free sparse elimination over ℤ: each incoming row is reduced
// against existing pivots by cross-multiplication and then divided by its
// content, so coefficients stay bounded by the input's.
std::size_t integer_rank(std::vector<SparseRow<Integer>> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const auto& x, const auto& y) { return x.size() < y.size(); });
  std::map<Index, SparseRow<Integer>> pivots;
  SparseRow<Integer> scratch;
  for (auto& row : rows) {
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) {
        pivots.emplace(row.front().first, std::move(row));
        break;
      }
      const auto& piv = it->second;
      const Integer g = gcd(piv.front().second, row.front().second);
      const Integer a = piv.front().second / g;
      const Integer b = row.front().second / g;
      scratch.clear();
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < row.size() || j < piv.size()) {
        if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
          scratch.push_back({row[i].first, a * row[i].second});
          ++i;
        } else if (i == row.size() || piv[j].first < row[i].first) {
          scratch.push_back({piv[j].first, -b * piv[j].second});
          ++j;
        } else {
          Integer v = a * row[i].second - b * piv[j].second;
          if (v != 0) scratch.push_back({row[i].first, std::move(v)});
          ++i;
          ++j;
        }
      }
      Integer content = 0;
      for (const auto& [c, v] : scratch) {
        content = gcd(content, v);
        if (content == 1) break;
      }
      if (content > 1) {
        for (auto& [c, v] : scratch) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
      }
      row.swap(scratch);
    }
  }
  return pivots.size();
}

std::size_t float_rank(std::vector<SparseRow<double>> rows, double tol) {
  double scale = 0.0;
  for (const auto& row : rows) {
    for (const auto& [c, v] : row) scale = std::max(scale, std::fabs(v));
  }
  const double threshold = std::max(tol, 1e-300) * std::max(scale, 1.0);
  std::sort(rows.begin(), rows.end(),
            [](const auto& x, const auto& y) { return x.size() < y.size(); });
  std::map<Index, SparseRow<double>> pivots;
  SparseRow<double> scratch;
  for (auto& row : rows) {
    std::erase_if(row, [&](const auto& p) { return std::fabs(p.second) <= threshold; });
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) {
        pivots.emplace(row.front().first, std::move(row));
        break;
      }
      const auto& piv = it->second;
      const double f = row.front().second / piv.front().second;
      scratch.clear();
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < row.size() || j < piv.size()) {
        double v;
        Index c;
        if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
          c = row[i].first;
          v = row[i].second;
          ++i;
        } else if (i == row.size() || piv[j].first < row[i].first) {
          c = piv[j].first;
          v = -f * piv[j].second;
          ++j;
        } else {
          c = row[i].first;
          v = row[i].second - f * piv[j].second;
          ++i;
          ++j;
        }
        if (c != row.front().first && std::fabs(v) > threshold) scratch.push_back({c, v});
      }
      row.swap(scratch);
    }
  }
  return pivots.size();
}

}  // namespace

template <>
std::size_t rank(const LegOperator<Rational>& op, double) {
  std::vector<SparseRow<Integer>> rows;
  for (auto& row : rows_of<Rational>(op.entries())) {
    Integer l = 1;
    for (const auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    SparseRow<Integer> irow;
    irow.reserve(row.size());
    for (const auto& [c, v] : row) irow.push_back({c, Integer(v.get_num() * (l / v.get_den()))});
    rows.push_back(std::move(irow));
  }
  return integer_rank(std::move(rows));
}

template <>
std::size_t rank(const LegOperator<double>& op, double tol) {
  return float_rank(rows_of<double>(op.entries()), tol);
}

template <class F>
Discrepancy compare(const LegOperator<F>& a, const LegOperator<F>& b) {
  Discrepancy d;
  if (a.dim() != b.dim() || a.legs() != b.legs()) {
    d.count = 1;
    d.max_abs = std::numeric_limits<double>::infinity();
    d.witness = "shape mismatch";
    return d;
  }
  const auto& x = a.entries();
  const auto& y = b.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  auto note = [&](Index r, Index c, const F& lhs, const F& rhs) {
    const F diff = lhs - rhs;
    if (diff == F(0)) return;
    ++d.count;
    const double m = FieldTraits<F>::magnitude(diff);
    if (d.witness.empty() || m > d.max_abs) {
      d.witness = "(" + std::to_string(r) + "," + std::to_string(c) +
                  "): lhs=" + FieldTraits<F>::format(lhs) + " rhs=" + FieldTraits<F>::format(rhs);
    }
    d.max_abs = std::max(d.max_abs, m);
  };
  while (i < x.size() || j < y.size()) {
    const bool take_x = j == y.size() ||
                        (i < x.size() && (x[i].row != y[j].row ? x[i].row < y[j].row
                                                               : x[i].col < y[j].col));
    const bool take_y = i == x.size() ||
                        (j < y.size() && (y[j].row != x[i].row ? y[j].row < x[i].row
                                                               : y[j].col < x[i].col));
    if (take_x) {
      note(x[i].row, x[i].col, x[i].value, F(0));
      ++i;
    } else if (take_y) {
      note(y[j].row, y[j].col, F(0), y[j].value);
      ++j;
    } else {
      note(x[i].row, x[i].col, x[i].value, y[j].value);
      ++i;
      ++j;
    }
  }
  return d;
}

template <class To>
LegOperator<To> convert(const LegOperator<Rational>& op) {
  std::vector<typename LegOperator<To>::Entry> e;
  e.reserve(op.nnz());
  for (const auto& x : op.entries()) {
    e.push_back({x.row, x.col, FieldTraits<To>::from_rational(x.value)});
  }
  return LegOperator<To>(op.dim(), op.legs(), std::move(e));
}

#define QMA_INSTANTIATE_TENSOR(F)                                                           \
  template class LegOperator<F>;                                                            \
  template LegOperator<F> identity(int, int);                                               \
  template LegOperator<F> scalar_operator(int, const F&);                                   \
  template LegOperator<F> permutation_flip(int);                                            \
  template LegOperator<F> from_dense(int, int, const std::vector<F>&);                      \
  template LegOperator<F> embed_at(const LegOperator<F>&, int, int);                        \
  template LegOperator<F> permute_legs(const LegOperator<F>&, std::span<const int>);        \
  template LegOperator<F> tensor(const LegOperator<F>&, const LegOperator<F>&);             \
  template LegOperator<F> compose(const LegOperator<F>&, const LegOperator<F>&);            \
  template LegOperator<F> add(const LegOperator<F>&, const LegOperator<F>&);                \
  template LegOperator<F> subtract(const LegOperator<F>&, const LegOperator<F>&);           \
  template LegOperator<F> scale(const F&, const LegOperator<F>&);                           \
  template LegOperator<F> apply_left(const LegOperator<F>&, int, const LegOperator<F>&);    \
  template LegOperator<F> apply_right(const LegOperator<F>&, const LegOperator<F>&, int);   \
  template LegOperator<F> plain_trace(const LegOperator<F>&, std::span<const int>);         \
  template LegOperator<F> weighted_trace(const LegOperator<F>&, std::span<const int>,       \
                                         const LegOperator<F>&);                            \
  template F full_trace(const LegOperator<F>&);                                             \
  template Discrepancy compare(const LegOperator<F>&, const LegOperator<F>&);               \
  template LegOperator<F> convert<F>(const LegOperator<Rational>&);

QMA_INSTANTIATE_TENSOR(Rational)
QMA_INSTANTIATE_TENSOR(double)

}  // namespace qma
