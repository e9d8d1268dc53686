#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qma/errors.hpp"
#include "qma/io.hpp"
#include "qma/ybkit.hpp"

using qma::Rational;
using Op = qma::LegOperator<Rational>;

TEST_CASE("standard O(3) survives an export round trip") {
  const auto p = qma::make_params(3, Rational(11, 10));
  const auto R = qma::standard_O(p);
  const auto text = qma::export_operator(R);
  CHECK(qma::import_operator(text) == R);
  CHECK(qma::export_operator(qma::import_operator(text)) == text);
  CHECK(qma::export_operator(qma::standard_O(p)) == text);
}

TEST_CASE("export layout") {
  const Op x(2, 1, {{1, 0, Rational(-3, 4)}, {0, 1, Rational(2)}});
  CHECK(qma::export_operator(x) == R"({"dim":2,"entries":[[0,1,"2"],[1,0,"-3/4"]],"legs":1})");
  const auto m = qma::matrix_json(x);
  CHECK(m.dump() == R"([["0","2"],["-3/4","0"]])");
  CHECK_THROWS_AS(qma::matrix_json(qma::identity<Rational>(2, 2)), qma::ShapeMismatch);
}

TEST_CASE("malformed operators name their location") {
  auto message = [](const std::string& text) {
    try {
      qma::import_operator(text);
    } catch (const qma::ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"dim":2,"legs":1,"entries":[)").find("byte") != std::string::npos);
  CHECK(message(R"({"dim":2,"legs":1})").find("entries") != std::string::npos);
  CHECK(message(R"({"dim":2,"legs":1,"entries":[[0,4,"1"]]})").find("$.entries[0][1]") != std::string::npos);
  CHECK(message(R"({"dim":2,"legs":1,"entries":[[0,1,"1/0"]]})").find("$.entries[0][2]") != std::string::npos);
  CHECK(message(R"({"dim":2,"legs":1,"entries":[[0,1,"x"]]})").find("$.entries[0][2]") != std::string::npos);
  CHECK(message(R"({"dim":2,"legs":1,"entries":[[1,1,"1"],[0,1,"1"]]})").find("$.entries[1]") !=
        std::string::npos);
  CHECK(message(R"({"dim":0,"legs":1,"entries":[]})").find("$.dim") != std::string::npos);
  CHECK(message(R"([1,2])") != "no error");
}

TEST_CASE("polynomials round trip") {
  qma::TwoCopyPoly<Rational> p;
  qma::poly_axpy(p, Rational(1), qma::poly_word<Rational>({{qma::Copy::dot, 0, 2}, {qma::Copy::ddot, 1, 1}}, Rational(5, 7)));
  qma::poly_axpy(p, Rational(1), qma::poly_word<Rational>({{qma::Copy::ddot, 2, 0}}, Rational(-1)));
  const auto j = qma::poly_json(p);
  CHECK(j[0]["word"][0][0] == "dot");
  CHECK(j[0]["word"][0][2] == 3);
  CHECK(qma::poly_from_json(j) == p);
  CHECK_THROWS_AS(qma::poly_from_json(nlohmann::json::parse(R"([{"word":[["dot",0,1]],"coeff":"1"}])")),
                  qma::ParseError);
  CHECK_THROWS_AS(qma::poly_from_json(nlohmann::json::parse(R"([{"word":[["tri",1,1]],"coeff":"1"}])")),
                  qma::ParseError);
}
