#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qma/braided.hpp"
#include "qma/tensor.hpp"

namespace qma {

// {"dim":k,"legs":n,"entries":[[row,col,"p/q"],...]} with entries in (row, col)
// order, so equal operators serialize to identical bytes.
nlohmann::json operator_json(const LegOperator<Rational>& op);
std::string export_operator(const LegOperator<Rational>& op);

// Throws ParseError naming the byte offset or the offending JSON path.
LegOperator<Rational> operator_from_json(const nlohmann::json& j, const std::string& where = "$");
LegOperator<Rational> import_operator(std::string_view text);

// One-leg operators as k×k arrays of "p/q" strings.
nlohmann::json matrix_json(const LegOperator<Rational>& op);
nlohmann::json matrix_list_json(const std::vector<LegOperator<Rational>>& ops);

// [{"word":[["dot",a,b],...],"coeff":"p/q"},...] with 1-based indices.
nlohmann::json poly_json(const TwoCopyPoly<Rational>& p);
TwoCopyPoly<Rational> poly_from_json(const nlohmann::json& j, const std::string& where = "$");

// Throws Error when the file cannot be read or written.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace qma
