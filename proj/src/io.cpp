#include "qma/io.hpp"

#include <fstream>
#include <sstream>

#include "qma/errors.hpp"

namespace qma {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

long long int_at(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long long>();
}

Rational rational_at(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(where, "expected a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(where, e.what());
  }
}

}  // namespace

json operator_json(const LegOperator<Rational>& op) {
  json entries = json::array();
  for (const auto& e : op.entries()) entries.push_back({e.row, e.col, to_string(e.value)});
  return {{"dim", op.dim()}, {"legs", op.legs()}, {"entries", std::move(entries)}};
}

std::string export_operator(const LegOperator<Rational>& op) { return operator_json(op).dump(); }

LegOperator<Rational> operator_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const char* key : {"dim", "legs", "entries"}) {
    if (!j.contains(key)) fail(where, std::string("missing \"") + key + "\"");
  }
  const long long dim = int_at(j["dim"], where + ".dim");
  const long long legs = int_at(j["legs"], where + ".legs");
  if (dim < 1) fail(where + ".dim", "must be positive");
  if (legs < 1) fail(where + ".legs", "must be positive");
  Index size = 1;
  for (long long i = 0; i < legs; ++i) {
    if (size > (Index(1) << 40) / static_cast<Index>(dim)) fail(where, "operator too large");
    size *= static_cast<Index>(dim);
  }
  const json& list = j["entries"];
  if (!list.is_array()) fail(where + ".entries", "expected an array");
  std::vector<LegOperator<Rational>::Entry> entries;
  entries.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = where + ".entries[" + std::to_string(i) + "]";
    const json& e = list[i];
    if (!e.is_array() || e.size() != 3) fail(at, "expected [row, col, value]");
    const long long r = int_at(e[0], at + "[0]");
    const long long c = int_at(e[1], at + "[1]");
    if (r < 0 || static_cast<Index>(r) >= size) fail(at + "[0]", "row out of range");
    if (c < 0 || static_cast<Index>(c) >= size) fail(at + "[1]", "column out of range");
    entries.push_back({static_cast<Index>(r), static_cast<Index>(c), rational_at(e[2], at + "[2]")});
    if (i > 0) {
      const auto& p = entries[entries.size() - 2];
      const auto& q = entries.back();
      if (std::pair(p.row, p.col) >= std::pair(q.row, q.col)) {
        fail(at, "entries must be strictly ascending in (row, col)");
      }
    }
  }
  return LegOperator<Rational>(static_cast<int>(dim), static_cast<int>(legs), std::move(entries));
}

LegOperator<Rational> import_operator(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte) + ": malformed JSON");
  }
  return operator_from_json(j);
}

json matrix_json(const LegOperator<Rational>& op) {
  if (op.legs() != 1) throw ShapeMismatch("matrix export expects a one-leg operator");
  const auto k = static_cast<Index>(op.dim());
  json out = json::array();
  for (Index r = 0; r < k; ++r) out.push_back(std::vector<std::string>(k, "0"));
  for (const auto& e : op.entries()) out[e.row][e.col] = to_string(e.value);
  return out;
}

json matrix_list_json(const std::vector<LegOperator<Rational>>& ops) {
  json out = json::array();
  for (const auto& op : ops) out.push_back(matrix_json(op));
  return out;
}

json poly_json(const TwoCopyPoly<Rational>& p) {
  json out = json::array();
  for (const auto& [w, c] : p) {
    json word = json::array();
    for (const auto& s : w) word.push_back({s.copy == Copy::dot ? "dot" : "ddot", s.a + 1, s.b + 1});
    out.push_back({{"word", std::move(word)}, {"coeff", to_string(c)}});
  }
  return out;
}

TwoCopyPoly<Rational> poly_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of terms");
  TwoCopyPoly<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const json& t = j[i];
    if (!t.is_object() || !t.contains("word") || !t.contains("coeff")) fail(at, "expected {word, coeff}");
    if (!t["word"].is_array()) fail(at + ".word", "expected an array");
    TwoCopyWord w;
    for (std::size_t s = 0; s < t["word"].size(); ++s) {
      const std::string sat = at + ".word[" + std::to_string(s) + "]";
      const json& sym = t["word"][s];
      if (!sym.is_array() || sym.size() != 3 || !sym[0].is_string()) fail(sat, "expected [copy, a, b]");
      const std::string tag = sym[0].get<std::string>();
      if (tag != "dot" && tag != "ddot") fail(sat + "[0]", "copy must be \"dot\" or \"ddot\"");
      const long long a = int_at(sym[1], sat + "[1]");
      const long long b = int_at(sym[2], sat + "[2]");
      if (a < 1 || a > 255 || b < 1 || b > 255) fail(sat, "index out of range");
      w.push_back({tag == "dot" ? Copy::dot : Copy::ddot, static_cast<std::uint8_t>(a - 1),
                   static_cast<std::uint8_t>(b - 1)});
    }
    poly_axpy(out, Rational(1), poly_word<Rational>(w, rational_at(t["coeff"], at + ".coeff")));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace qma
