#include "qma/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <sstream>

#include "qma/braided.hpp"
#include "qma/dense.hpp"
#include "qma/errors.hpp"
#include "qma/idempotents.hpp"
#include "qma/io.hpp"
#include "qma/qmarep.hpp"
#include "qma/ybkit.hpp"

namespace qma {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool needs_towers(const std::string& g) {
  return g != "bmw" && g != "appendix";
}

bool needs_images(const std::string& g) {
  return g == "char" || g == "structure" || g == "reciprocal" || g == "detcomm" ||
         g == "resolution";
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ForbiddenParameter*>(&e)) return "ForbiddenParameter";
  if (dynamic_cast<const NotSkewInvertible*>(&e)) return "NotSkewInvertible";
  if (dynamic_cast<const NotStrict*>(&e)) return "NotStrict";
  if (dynamic_cast<const NotBmwType*>(&e)) return "NotBmwType";
  if (dynamic_cast<const NotCompatible*>(&e)) return "NotCompatible";
  if (dynamic_cast<const TowerMismatch*>(&e)) return "TowerMismatch";
  if (dynamic_cast<const HeightNotFound*>(&e)) return "HeightNotFound";
  if (dynamic_cast<const SingularContraction*>(&e)) return "SingularContraction";
  if (dynamic_cast<const ExchangeNotInvertible*>(&e)) return "ExchangeNotInvertible";
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const ShapeMismatch*>(&e)) return "ShapeMismatch";
  return "Error";
}

// Everything the groups read; built once, then shared read-only.
template <class F>
struct Context {
  DeformParams<F> p;
  YangBaxterData<F> r;
  YangBaxterData<F> f;
  std::optional<BmwCertificate<F>> bmw;
  std::optional<CompatiblePair<F>> pair;
  std::optional<BmwCertificate<F>> bmw_f;
  IdempotentTower<F> t;
  IdempotentTower<F> tf;
  StructureMatrices<F> sm;
  std::vector<Representation<F>> reps;
  std::vector<CharImages<F>> images;
};

template <class F>
LegOperator<F> load_custom(const SuiteConfig& cfg) {
  const auto op = import_operator(read_file(cfg.custom_path));
  if (op.dim() != cfg.k || op.legs() != 2) {
    throw ShapeMismatch("custom F must act on two legs of dimension " + std::to_string(cfg.k));
  }
  if constexpr (FieldTraits<F>::exact) {
    return op;
  } else {
    return convert<F>(op);
  }
}

template <class F>
ModeReport run_mode(const SuiteConfig& cfg, const std::vector<std::string>& groups,
                    double tol) {
  const auto t0 = Clock::now();
  ModeReport out;
  out.mode = FieldTraits<F>::exact ? "exact" : "float";
  out.tolerance = tol;
  const int k = cfg.k;
  const int depth = cfg.contractor_depth > 0 ? cfg.contractor_depth : std::min(3, k);
  const bool want_towers = std::any_of(groups.begin(), groups.end(), needs_towers);
  const bool want_images = std::any_of(groups.begin(), groups.end(), needs_images);

  // Records produced while building, by group.
  std::map<std::string, CheckLog<F>> built;
  for (const auto& g : groups) built.emplace(g, CheckLog<F>(g, tol));
  auto log_for = [&](const std::string& g) -> CheckLog<F>& {
    return built.try_emplace(g, CheckLog<F>(g, tol)).first->second;
  };

  auto ctx = std::make_shared<Context<F>>();
  auto finish_error = [&](const std::exception& e) {
    out.error = e.what();
    out.error_kind = error_kind(e);
    for (const auto& g : groups) {
      for (const auto& rec : log_for(g).records()) out.records.push_back(rec);
    }
    out.seconds = since(t0);
    return out;
  };

  try {
    const auto exact_params = make_params(k, cfg.v);
    if constexpr (FieldTraits<F>::exact) {
      ctx->p = exact_params;
    } else {
      ctx->p = convert_params<F>(exact_params);
    }
    ctx->r = skew_invert(standard_O(ctx->p, tol), tol);
    switch (cfg.pair) {
      case PairKind::frt: ctx->f = flip<F>(k); break;
      case PairKind::re: ctx->f = ctx->r; break;
      case PairKind::custom: {
        // The twist relations only involve F and F⁻¹, so they gate first.
        YangBaxterData<F> bare;
        bare.R = load_custom<F>(cfg);
        auto inv = try_inverse(bare.R);
        if (!inv) throw NotCompatible("custom F is not invertible");
        bare.R_inv = std::move(*inv);
        make_pair(ctx->r, bare, tol);
        ctx->f = skew_invert(bare.R, tol);
        break;
      }
    }
    ctx->bmw = bmw_certify(ctx->r, ctx->p, tol);
    ctx->pair = make_pair(ctx->r, ctx->f, tol);
    if (want_towers) {
      ctx->bmw_f = bmw_certify(ctx->pair->twisted, ctx->p, tol);
      auto& tl = log_for("tower");
      tl.restart_clock();
      ctx->t = build_towers(ctx->r, *ctx->bmw, {k + 1, depth, 2}, tl);
      ctx->tf = build_towers(ctx->pair->twisted, *ctx->bmw_f, {k, depth, 2}, tl);
    }
    if (want_images) {
      log_for("structure").restart_clock();
      ctx->sm = structure_matrices(*ctx->pair, ctx->t, log_for("structure"));
      auto& cl = log_for("char");
      cl.restart_clock();
      for (auto tag : {RepTag::alpha_plus, RepTag::alpha_minus, RepTag::beta}) {
        ctx->reps.push_back(make_rep(*ctx->pair, tag, cl));
        ctx->images.push_back(char_images(ctx->reps.back(), ctx->t, cl));
      }
    }
  } catch (const Error& e) {
    return finish_error(e);
  }

  const Context<F>& c = *ctx;
  std::optional<int> tau;
  std::optional<bool> hyp;
  std::vector<long long> ranks;

  std::map<std::string, std::function<void(CheckLog<F>&)>> jobs;
  jobs["bmw"] = [&](CheckLog<F>& log) {
    log.absorb(c.bmw->checks);
    log.absorb(c.pair->checks);
    certify_yang_baxter(c.r, log);
    if (cfg.pair != PairKind::re) certify_yang_baxter(c.f, log);
    certify_z_strings(*c.pair, k, log);
  };
  jobs["tower"] = [](CheckLog<F>&) {};
  jobs["contractors"] = [&](CheckLog<F>& log) { certify_contractors(c.t, c.tf, *c.pair, log); };
  jobs["spectral"] = [&](CheckLog<F>& log) { certify_spectral(c.t, c.tf, *c.pair, log); };
  jobs["height"] = [&](CheckLog<F>& log) {
    const auto h = detect_height(c.t, tol);
    log.count_equal("detected height equals k", "spec4", h.height, k);
    log.holds("a^(k) has rank one", "spec4", h.rank_one,
              h.ranks.size() > static_cast<std::size_t>(k) ? "rank " + std::to_string(h.ranks[k]) : "");
    std::string text;
    for (std::size_t i = 1; i < h.ranks.size(); ++i) {
      text += (text.empty() ? "" : " ") + std::to_string(h.ranks[i]);
    }
    log.note("ranks of a^(i), i = 1.." + std::to_string(h.ranks.size() - 1), "observation", text);
    ranks.assign(h.ranks.begin() + (h.ranks.empty() ? 0 : 1), h.ranks.end());
  };
  jobs["char"] = [&](CheckLog<F>& log) {
    for (std::size_t i = 0; i < c.reps.size(); ++i) {
      verify_images(c.reps[i], c.images[i], c.sm, c.p, log);
      minv_image(c.reps[i], c.images[i], c.sm, c.p, log);
      verify_string_forms(c.reps[i], c.images[i], c.t, depth, log);
    }
  };
  jobs["structure"] = [](CheckLog<F>&) {};
  jobs["reciprocal"] = [&](CheckLog<F>& log) {
    for (const auto& im : c.images) verify_reciprocal(im, k, log);
  };
  jobs["detcomm"] = [&](CheckLog<F>& log) {
    for (std::size_t i = 0; i < c.reps.size(); ++i) verify_det_commutation(c.reps[i], c.images[i], c.sm, log);
  };
  jobs["resolution"] = [&](CheckLog<F>& log) {
    for (std::size_t i = 0; i < c.reps.size(); ++i) {
      const auto res = verify_resolution(c.images[i], c.sm, c.p, log);
      if (i == 0 && res.even) {
        hyp = res.hypothesis_met;
        if (res.tau != 0) tau = res.tau;
      }
    }
  };
  jobs["appendix"] = [&](CheckLog<F>& log) {
    const auto rule = exchange_map(c.pair->f);
    verify_exchange(rule, cfg.exchange_samples, log);
    verify_mixed_commutation(*c.pair, rule, log);
    verify_hom_degree22(*c.pair, rule, log);
  };

  std::vector<CheckLog<F>> logs;
  for (const auto& g : groups) logs.push_back(log_for(g));
  std::vector<std::string> errors(groups.size());
  std::vector<std::string> kinds(groups.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < groups.size(); i = next++) {
      try {
        logs[i].restart_clock();
        jobs.at(groups[i])(logs[i]);
      } catch (const Error& e) {
        errors[i] = e.what();
        kinds[i] = error_kind(e);
      }
    }
  };
  const int n = std::max(1, std::min<int>(cfg.workers, static_cast<int>(groups.size())));
  std::vector<std::future<void>> pool;
  for (int w = 1; w < n; ++w) pool.push_back(std::async(std::launch::async, worker));
  worker();
  for (auto& f : pool) f.get();

  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (const auto& rec : logs[i].records()) out.records.push_back(rec);
    if (!errors[i].empty() && out.error.empty()) {
      out.error = groups[i] + ": " + errors[i];
      out.error_kind = kinds[i];
    }
  }
  out.tau = tau;
  out.hypothesis_met = hyp;
  out.ranks_a = ranks;
  out.seconds = since(t0);
  return out;
}

// Float verdicts re-judged at the requested tolerance: a residual above it
// turns a pass into a fail.
void rejudge(ModeReport& m, double tol) {
  m.tolerance = tol;
  for (auto& r : m.records) {
    if (r.status == Status::pass && r.residual > tol) {
      r.status = Status::fail;
      std::ostringstream ss;
      ss << "residual " << r.residual << " exceeds tolerance " << tol;
      r.witness = ss.str();
    }
  }
}

std::string format_double(double x) {
  std::ostringstream ss;
  ss.precision(17);
  ss << x;
  return ss.str();
}

}  // namespace

std::size_t ModeReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [s](const CheckRecord& r) { return r.status == s; }));
}

void parse_pair(std::string_view text, SuiteConfig& cfg) {
  if (text == "frt") {
    cfg.pair = PairKind::frt;
  } else if (text == "re") {
    cfg.pair = PairKind::re;
  } else if (text.substr(0, 7) == "custom:" && text.size() > 7) {
    cfg.pair = PairKind::custom;
    cfg.custom_path = std::string(text.substr(7));
  } else {
    throw ParseError("--pair: expected frt, re or custom:PATH, got '" + std::string(text) + "'");
  }
}

void parse_mode(std::string_view text, SuiteConfig& cfg) {
  if (text == "exact") {
    cfg.float_mode = false;
    return;
  }
  if (text.substr(0, 6) == "float:") {
    const std::string tol(text.substr(6));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(tol, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == tol.size() && used > 0 && value > 0.0) {
      cfg.float_mode = true;
      cfg.tolerance = value;
      return;
    }
  }
  throw ParseError("--mode: expected exact or float:TOL with TOL > 0, got '" + std::string(text) + "'");
}

std::vector<std::string> parse_checks(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const auto name = std::string(text.substr(start, end - start));
    if (!name.empty()) out.push_back(name);
    start = end + 1;
  }
  return out;
}

std::string pair_text(const SuiteConfig& cfg) {
  switch (cfg.pair) {
    case PairKind::frt: return "frt";
    case PairKind::re: return "re";
    case PairKind::custom: return "custom:" + cfg.custom_path;
  }
  return {};
}

std::string mode_text(const SuiteConfig& cfg) {
  return cfg.float_mode ? "float:" + format_double(cfg.tolerance) : "exact";
}

const std::vector<std::string>& check_group_names() {
  static const std::vector<std::string> names{"bmw",       "tower",     "contractors", "spectral",
                                              "height",    "char",      "structure",   "reciprocal",
                                              "detcomm",   "resolution", "appendix"};
  return names;
}

std::vector<std::string> selected_groups(const SuiteConfig& cfg) {
  if (cfg.k < 2) throw ParseError("--k must be at least 2");
  if (cfg.float_mode && !(cfg.tolerance > 0.0)) throw ParseError("float tolerance must be positive");
  const auto& all = check_group_names();
  if (cfg.checks.empty()) {
    std::vector<std::string> out;
    for (const auto& g : all) {
      if (g == "appendix" && cfg.k > 3) continue;
      out.push_back(g);
    }
    return out;
  }
  for (const auto& g : cfg.checks) {
    if (std::find(all.begin(), all.end(), g) == all.end()) {
      throw ParseError("--checks: unknown group '" + g + "'");
    }
  }
  std::vector<std::string> out;
  for (const auto& g : all) {
    if (std::find(cfg.checks.begin(), cfg.checks.end(), g) != cfg.checks.end()) out.push_back(g);
  }
  return out;
}

ModeReport float_shadow(const SuiteConfig& cfg) {
  // Construction gates need some slack; verdicts use the requested tolerance.
  auto m = run_mode<double>(cfg, selected_groups(cfg), std::max(cfg.tolerance, 1e-9));
  rejudge(m, cfg.tolerance);
  return m;
}

std::vector<VerdictMismatch> compare_verdicts(const ModeReport& exact, const ModeReport& shadow) {
  // Records are matched by (group, name, occurrence).
  using Key = std::tuple<std::string, std::string, int>;
  auto keyed = [](const ModeReport& m) {
    std::map<Key, const CheckRecord*> out;
    std::map<std::pair<std::string, std::string>, int> seen;
    for (const auto& r : m.records) out[{r.group, r.name, seen[{r.group, r.name}]++}] = &r;
    return out;
  };
  const auto a = keyed(exact);
  const auto b = keyed(shadow);
  std::vector<VerdictMismatch> out;
  auto verdict = [](const CheckRecord* r) {
    return r ? std::string(status_name(r->status)) : std::string("missing");
  };
  std::map<Key, std::pair<const CheckRecord*, const CheckRecord*>> joined;
  for (const auto& [key, r] : a) joined[key].first = r;
  for (const auto& [key, r] : b) joined[key].second = r;
  for (const auto& [key, rs] : joined) {
    const auto [x, y] = rs;
    if (x && y && x->status == y->status) continue;
    // Observations carry no verdict.
    if (x && y && (x->status == Status::info || y->status == Status::info)) continue;
    VerdictMismatch m{std::get<0>(key), std::get<1>(key), verdict(x), verdict(y), y ? y->residual : 0.0,
                      false};
    m.tolerance_artifact = x && y && x->status == Status::pass && y->status == Status::fail &&
                           y->residual > shadow.tolerance;
    out.push_back(std::move(m));
  }
  // Report order follows the exact run.
  std::map<std::pair<std::string, std::string>, std::size_t> order;
  for (std::size_t i = 0; i < exact.records.size(); ++i) {
    order.try_emplace({exact.records[i].group, exact.records[i].name}, i);
  }
  std::stable_sort(out.begin(), out.end(), [&](const VerdictMismatch& l, const VerdictMismatch& r) {
    auto pos = [&](const VerdictMismatch& m) {
      auto it = order.find({m.group, m.name});
      return it == order.end() ? order.size() : it->second;
    };
    return pos(l) < pos(r);
  });
  return out;
}

ReportDocument run_suite(const SuiteConfig& cfg) {
  ReportDocument doc;
  doc.config = cfg;
  doc.groups = selected_groups(cfg);
  doc.exact = run_mode<Rational>(cfg, doc.groups, 0.0);
  if (cfg.float_mode) {
    doc.shadow = float_shadow(cfg);
    doc.mismatches = compare_verdicts(doc.exact, *doc.shadow);
    if (!doc.shadow->error.empty()) {
      doc.mismatches.push_back({"construction", doc.shadow->error_kind,
                                doc.exact.error.empty() ? "pass" : "error", "error", 0.0, false});
    }
  }
  return doc;
}

int exit_code(const ReportDocument& doc) {
  if (!doc.exact.error.empty()) return 2;
  return doc.exact.count(Status::fail) == 0 ? 0 : 1;
}

nlohmann::json report_json(const ReportDocument& doc, bool timings) {
  using nlohmann::json;
  const auto& cfg = doc.config;
  json out;
  out["config"] = {{"k", cfg.k},
                   {"pair", pair_text(cfg)},
                   {"v", to_string(cfg.v)},
                   {"depth", cfg.contractor_depth > 0 ? cfg.contractor_depth : std::min(3, cfg.k)},
                   {"checks", doc.groups},
                   {"mode", mode_text(cfg)},
                   {"workers", cfg.workers}};
  auto mode_json = [](const ModeReport& m) {
    json checks = json::array();
    for (const auto& r : m.records) {
      json c{{"group", r.group},
             {"name", r.name},
             {"anchor", r.anchor},
             {"status", std::string(status_name(r.status))},
             {"witness", r.witness}};
      if (m.mode == "float") c["residual"] = r.residual;
      checks.push_back(std::move(c));
    }
    json j{{"mode", m.mode},
           {"checks", std::move(checks)},
           {"summary",
            {{"pass", m.count(Status::pass)},
             {"fail", m.count(Status::fail)},
             {"skipped", m.count(Status::skipped)},
             {"info", m.count(Status::info)}}}};
    if (m.mode == "float") j["tolerance"] = m.tolerance;
    j["error"] = m.error.empty() ? json(nullptr) : json{{"kind", m.error_kind}, {"message", m.error}};
    json obs;
    obs["tau"] = m.tau ? json(*m.tau) : json(nullptr);
    obs["hypothesis_met"] = m.hypothesis_met ? json(*m.hypothesis_met) : json(nullptr);
    obs["ranks_a"] = m.ranks_a;
    j["observations"] = std::move(obs);
    return j;
  };
  out["exact"] = mode_json(doc.exact);
  if (doc.shadow) {
    out["float"] = mode_json(*doc.shadow);
    json mm = json::array();
    for (const auto& m : doc.mismatches) {
      mm.push_back({{"group", m.group},
                    {"name", m.name},
                    {"exact", m.exact},
                    {"float", m.shadow},
                    {"residual", m.residual},
                    {"tolerance_artifact", m.tolerance_artifact}});
    }
    out["mismatches"] = std::move(mm);
  }
  const int code = exit_code(doc);
  out["status"] = code == 0 ? "pass" : code == 1 ? "fail" : "error";
  out["exit_code"] = code;
  if (timings) {
    auto times = [](const ModeReport& m) {
      json per = json::array();
      for (const auto& r : m.records) per.push_back(r.seconds);
      return json{{"total_seconds", m.seconds}, {"check_seconds", std::move(per)}};
    };
    out["timings"]["exact"] = times(doc.exact);
    if (doc.shadow) out["timings"]["float"] = times(*doc.shadow);
  }
  return out;
}

}  // namespace qma
