#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qma/braided.hpp"
#include "qma/errors.hpp"
#include "qma/idempotents.hpp"
#include "qma/io.hpp"
#include "qma/qmarep.hpp"
#include "qma/suite.hpp"
#include "qma/ybkit.hpp"

namespace {

constexpr int kExitParameter = 2;

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << "\n";
  } else {
    qma::write_file(path, text + "\n");
  }
}

void print_summary(const qma::ReportDocument& doc) {
  const auto& m = doc.exact;
  std::cerr << "k=" << doc.config.k << " pair=" << qma::pair_text(doc.config)
            << " v=" << qma::to_string(doc.config.v) << ": " << m.count(qma::Status::pass) << " pass, "
            << m.count(qma::Status::fail) << " fail, " << m.count(qma::Status::skipped) << " skipped ("
            << m.seconds << " s)\n";
  for (const auto& r : m.records) {
    if (r.status == qma::Status::fail) {
      std::cerr << "  FAIL [" << r.group << "] " << r.name << " {" << r.anchor << "} " << r.witness << "\n";
    }
  }
  if (!m.error.empty()) std::cerr << "  error " << m.error_kind << ": " << m.error << "\n";
  if (doc.shadow) {
    std::cerr << "float shadow at " << doc.shadow->tolerance << ": " << doc.shadow->count(qma::Status::pass)
              << " pass, " << doc.shadow->count(qma::Status::fail) << " fail; " << doc.mismatches.size()
              << " verdict mismatches\n";
    if (!doc.shadow->error.empty()) {
      std::cerr << "  float error " << doc.shadow->error_kind << ": " << doc.shadow->error << "\n";
    }
  }
}

struct Shared {
  int k = 3;
  std::string pair = "frt";
  std::string v = "11/10";
  int depth = 0;
};

void add_shared(CLI::App* app, Shared& s) {
  app->add_option("--k", s.k, "dimension of V")->check(CLI::Range(2, 16));
  app->add_option("--pair", s.pair, "frt, re or custom:PATH");
  app->add_option("--v", s.v, "base parameter P/Q, q = v^2");
  app->add_option("--depth", s.depth, "contractor depth, 0 for min(3, k)")->check(CLI::Range(0, 8));
}

qma::SuiteConfig config_of(const Shared& s) {
  qma::SuiteConfig cfg;
  cfg.k = s.k;
  qma::parse_pair(s.pair, cfg);
  cfg.v = qma::parse_rational(s.v);
  cfg.contractor_depth = s.depth;
  return cfg;
}

// Operator named by `what`, built at exact precision.
nlohmann::json dump_object(const qma::SuiteConfig& cfg, const std::string& what) {
  using qma::Rational;
  const auto p = qma::make_params(cfg.k, cfg.v);
  const auto r = qma::skew_invert(qma::standard_O(p));
  qma::YangBaxterData<Rational> f;
  switch (cfg.pair) {
    case qma::PairKind::frt: f = qma::flip<Rational>(cfg.k); break;
    case qma::PairKind::re: f = r; break;
    case qma::PairKind::custom:
      f = qma::skew_invert(qma::import_operator(qma::read_file(cfg.custom_path)));
      break;
  }
  if (what == "R") return qma::operator_json(r.R);
  if (what == "F") return qma::operator_json(f.R);
  if (what == "D") return qma::operator_json(r.D);
  const auto bmw = qma::bmw_certify(r, p);
  if (what == "K") return qma::operator_json(bmw.K);
  const auto pair = qma::make_pair(r, f);
  if (what == "twist") return qma::operator_json(pair.twisted.R);
  if (what == "exchange") return qma::operator_json(qma::exchange_map(pair.f).forward);
  const int depth = cfg.contractor_depth > 0 ? cfg.contractor_depth : std::min(3, cfg.k);
  qma::CheckLog<Rational> log("dump");
  const auto t = qma::build_towers(r, bmw, {cfg.k + 1, depth, 2}, log);
  const auto colon = what.find(':');
  const std::string family = what.substr(0, colon);
  if (colon != std::string::npos && (family == "a" || family == "s" || family == "c")) {
    const auto& list = family == "a" ? t.a : family == "s" ? t.s : t.c;
    std::size_t i = 0;
    const std::string digits = what.substr(colon + 1);
    const bool numeric = !digits.empty() && digits.size() < 4 &&
                         digits.find_first_not_of("0123456789") == std::string::npos;
    if (numeric) i = static_cast<std::size_t>(std::stoi(digits));
    if (!numeric || i < 1 || i >= list.size()) {
      throw qma::ParseError("--object: no member '" + what + "'");
    }
    return qma::operator_json(list[i]);
  }
  const auto sm = qma::structure_matrices(pair, t, log);
  if (what == "G") return qma::matrix_json(sm.G);
  if (what == "O") return qma::matrix_json(sm.O);
  if (what.rfind("images:", 0) == 0) {
    const std::string tag = what.substr(7);
    const auto rt = tag == "alpha+" ? qma::RepTag::alpha_plus
                    : tag == "alpha-" ? qma::RepTag::alpha_minus
                    : tag == "beta" ? qma::RepTag::beta
                                    : throw qma::ParseError("--object: rep must be alpha+, alpha- or beta");
    const auto rep = qma::make_rep(pair, rt, log);
    const auto im = qma::char_images(rep, t, log);
    return nlohmann::json{{"p", qma::matrix_list_json(im.p)},
                          {"e", qma::matrix_list_json(im.e)},
                          {"h", qma::matrix_list_json(im.h)},
                          {"g", qma::matrix_json(im.g)},
                          {"g_inv", qma::matrix_json(im.g_inv)}};
  }
  throw qma::ParseError("--object: unknown object '" + what + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of O(k)-type quantum matrix algebras"};
  app.require_subcommand(1);

  Shared vs;
  std::string checks;
  std::string mode = "exact";
  std::string report;
  int workers = 1;
  int samples = 500;
  bool no_timings = false;
  auto* verify = app.add_subcommand("verify", "run the check suite and write a JSON report");
  add_shared(verify, vs);
  verify->add_option("--checks", checks, "comma separated groups, default all applicable");
  verify->add_option("--mode", mode, "exact or float:TOL");
  verify->add_option("--report", report, "report path, stdout when omitted");
  verify->add_option("--workers", workers, "groups run concurrently")->check(CLI::Range(1, 64));
  verify->add_option("--samples", samples, "confluence samples for k > 2")->check(CLI::Range(1, 1000000));
  verify->add_flag("--no-timings", no_timings, "leave timing fields out of the report");

  Shared bs;
  std::string out_r;
  auto* build_r = app.add_subcommand("build-r", "export the certified standard O(k) matrix");
  build_r->add_option("--k", bs.k, "dimension of V")->check(CLI::Range(2, 16));
  build_r->add_option("--v", bs.v, "base parameter P/Q");
  build_r->add_option("--out", out_r, "output path, stdout when omitted");

  Shared ds;
  std::string object = "R";
  std::string in_path;
  std::string out_d;
  auto* dump = app.add_subcommand("dump", "export a constructed object, or canonicalize an operator file");
  add_shared(dump, ds);
  dump->add_option("--object", object,
                   "R, F, D, K, twist, exchange, a:I, s:I, c:I, G, O, images:{alpha+,alpha-,beta}");
  dump->add_option("--in", in_path, "operator JSON to re-emit canonically");
  dump->add_option("--out", out_d, "output path, stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitParameter;
  }

  try {
    if (*verify) {
      auto cfg = config_of(vs);
      if (!checks.empty()) cfg.checks = qma::parse_checks(checks);
      qma::parse_mode(mode, cfg);
      cfg.report_path = report;
      cfg.workers = workers;
      cfg.exchange_samples = samples;
      const auto doc = qma::run_suite(cfg);
      emit(qma::report_json(doc, !no_timings).dump(2), report);
      print_summary(doc);
      return qma::exit_code(doc);
    }
    if (*build_r) {
      const auto p = qma::make_params(bs.k, qma::parse_rational(bs.v));
      const auto r = qma::skew_invert(qma::standard_O(p));
      qma::bmw_certify(r, p);
      emit(qma::export_operator(r.R), out_r);
      return 0;
    }
    if (*dump) {
      if (!in_path.empty()) {
        emit(qma::export_operator(qma::import_operator(qma::read_file(in_path))), out_d);
        return 0;
      }
      emit(dump_object(config_of(ds), object).dump(), out_d);
      return 0;
    }
  } catch (const qma::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParameter;
  }
  return kExitParameter;
}
