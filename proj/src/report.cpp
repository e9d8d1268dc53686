#include "qma/report.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

namespace qma {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
    case Status::info:
      return "info";
  }
  return "unknown";
}

template <class F>
CheckLog<F>::CheckLog(std::string group, double tol)
    : group_(std::move(group)), tol_(tol), lap_(std::chrono::steady_clock::now()) {}

template <class F>
bool CheckLog<F>::push(std::string name, std::string anchor, Status status, std::string witness,
                       double residual) {
  const auto now = std::chrono::steady_clock::now();
  CheckRecord r;
  r.name = std::move(name);
  r.group = group_;
  r.anchor = std::move(anchor);
  r.status = status;
  r.witness = std::move(witness);
  r.residual = residual;
  r.seconds = std::chrono::duration<double>(now - lap_).count();
  lap_ = now;
  records_.push_back(std::move(r));
  return status != Status::fail;
}

template <class F>
bool CheckLog<F>::equal(std::string name, std::string anchor, const LegOperator<F>& lhs,
                        const LegOperator<F>& rhs) {
  const Discrepancy d = compare(lhs, rhs);
  const bool ok = FieldTraits<F>::exact ? d.count == 0 : d.max_abs <= tol_;
  return push(std::move(name), std::move(anchor), ok ? Status::pass : Status::fail,
              ok ? std::string() : d.witness, d.max_abs);
}

template <class F>
bool CheckLog<F>::zero(std::string name, std::string anchor, const LegOperator<F>& op) {
  return equal(std::move(name), std::move(anchor), op, LegOperator<F>(op.dim(), op.legs()));
}

template <class F>
bool CheckLog<F>::scalar_equal(std::string name, std::string anchor, const F& lhs, const F& rhs) {
  const double r = FieldTraits<F>::magnitude(F(lhs - rhs));
  const bool ok = FieldTraits<F>::exact ? lhs == rhs : r <= tol_;
  return push(std::move(name), std::move(anchor), ok ? Status::pass : Status::fail,
              ok ? std::string()
                 : "lhs=" + FieldTraits<F>::format(lhs) + " rhs=" + FieldTraits<F>::format(rhs),
              r);
}

template <class F>
bool CheckLog<F>::count_equal(std::string name, std::string anchor, long long got,
                              long long expected) {
  const bool ok = got == expected;
  return push(std::move(name), std::move(anchor), ok ? Status::pass : Status::fail,
              ok ? std::string()
                 : "got " + std::to_string(got) + ", expected " + std::to_string(expected),
              static_cast<double>(std::llabs(got - expected)));
}

template <class F>
bool CheckLog<F>::holds(std::string name, std::string anchor, bool ok, std::string witness,
                        double residual) {
  return push(std::move(name), std::move(anchor), ok ? Status::pass : Status::fail,
              ok ? std::string() : std::move(witness), residual);
}

template <class F>
void CheckLog<F>::skip(std::string name, std::string anchor, std::string reason) {
  push(std::move(name), std::move(anchor), Status::skipped, std::move(reason), 0.0);
}

template <class F>
void CheckLog<F>::note(std::string name, std::string anchor, std::string text) {
  push(std::move(name), std::move(anchor), Status::info, std::move(text), 0.0);
}

template <class F>
void CheckLog<F>::absorb(const CheckLog& other) {
  records_.insert(records_.end(), other.records_.begin(), other.records_.end());
  lap_ = std::chrono::steady_clock::now();
}

template <class F>
std::size_t CheckLog<F>::failures() const {
  std::size_t n = 0;
  for (const auto& r : records_) n += r.status == Status::fail;
  return n;
}

template <class F>
const CheckRecord* CheckLog<F>::first_failure() const {
  for (const auto& r : records_) {
    if (r.status == Status::fail) return &r;
  }
  return nullptr;
}

template class CheckLog<Rational>;
template class CheckLog<double>;

}  // namespace qma
