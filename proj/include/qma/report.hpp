#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

#include "qma/tensor.hpp"

namespace qma {

enum class Status { pass, fail, skipped, info };

std::string_view status_name(Status s);

struct CheckRecord {
  std::string name;
  std::string group;
  std::string anchor;  // tag of the identity being checked, e.g. "YB"
  Status status = Status::pass;
  std::string witness;  // first offending entry or explanation; empty on pass
  double residual = 0.0;
  double seconds = 0.0;
};

// Ordered collection of check outcomes. Exact fields pass only on exact
// equality; inexact fields pass when the max-norm residual is within tol.
// The recorded time of a check is the time elapsed since the previous record.
template <class F>
class CheckLog {
 public:
  explicit CheckLog(std::string group, double tol = 0.0);

  const std::string& group() const { return group_; }
  double tolerance() const { return tol_; }

  bool equal(std::string name, std::string anchor, const LegOperator<F>& lhs,
             const LegOperator<F>& rhs);
  bool zero(std::string name, std::string anchor, const LegOperator<F>& op);
  bool scalar_equal(std::string name, std::string anchor, const F& lhs, const F& rhs);
  // Integer-valued facts such as ranks.
  bool count_equal(std::string name, std::string anchor, long long got, long long expected);
  bool holds(std::string name, std::string anchor, bool ok, std::string witness = {},
             double residual = 0.0);
  void skip(std::string name, std::string anchor, std::string reason);
  void note(std::string name, std::string anchor, std::string text);

  // The next record's time counts from now.
  void restart_clock() { lap_ = std::chrono::steady_clock::now(); }

  // Appends another log's records (keeping their group).
  void absorb(const CheckLog& other);

  const std::vector<CheckRecord>& records() const { return records_; }
  std::size_t failures() const;
  const CheckRecord* first_failure() const;

 private:
  bool push(std::string name, std::string anchor, Status status, std::string witness,
            double residual);

  std::string group_;
  double tol_;
  std::vector<CheckRecord> records_;
  std::chrono::steady_clock::time_point lap_;
};

}  // namespace qma
