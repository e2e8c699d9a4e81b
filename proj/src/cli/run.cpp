#include "germlab/cli.hpp"
#include "germlab/geometry.hpp"

#include <chrono>
#include <functional>
#include <new>

namespace germlab::cli {

using nlohmann::json;
using namespace germlab::invariants;
using geometry::FunctionGerm;

namespace {

template <class T>
std::string dec(const T& v) {
  if constexpr (std::is_same_v<T, Integer>) {
    return v.get_str();
  } else {
    return std::to_string(v);
  }
}

std::string flag(bool b) { return b ? "true" : "false"; }

std::string rational_str(const Rational& r) { return r.get_str(); }

struct Context {
  const TaskFile& tf;
  VariableSet ring;
  Genericity gen;
  json values = json::object();
  json notes = json::array();
};

std::uint64_t to_u64(const Integer& v, const char* what) {
  if (v < 0 || !v.fits_ulong_p()) fail(ErrorCode::InvalidInput, std::string(what) + " is out of range");
  return v.get_ui();
}

const Value& need(const TaskFile& tf, const char* name) {
  const Value* v = tf.binding(name);
  if (!v) fail(ErrorCode::MissingInput, std::string("missing binding ") + name);
  return *v;
}

std::vector<Polynomial> list_or_empty(const TaskFile& tf, const char* name) {
  const Value* v = tf.binding(name);
  if (!v) return {};
  if (v->kind == Value::Kind::Scalar) return {v->scalar()};
  if (v->rows.empty()) return {};
  return v->list();
}

SubmodulePresentation module_of(const Value& v, const VariableSet& vars) {
  switch (v.kind) {
    case Value::Kind::Scalar: return SubmodulePresentation::ideal(vars, std::vector<Polynomial>{v.scalar()});
    case Value::Kind::List: return SubmodulePresentation::ideal(vars, v.rows.empty() ? std::vector<Polynomial>{} : v.list());
    case Value::Kind::Matrix: return SubmodulePresentation::columns(ring::PolyMatrix::from_rows(vars, v.rows));
  }
  fail(ErrorCode::InvalidInput, "unsupported module value");
}

GermSpace germ_of(const Context& ctx) {
  std::optional<unsigned> dim;
  if (auto d = ctx.tf.integer("dim")) dim = static_cast<unsigned>(to_u64(*d, "dim"));
  GermAssertions a{ctx.tf.has_assertion("icis"), ctx.tf.has_assertion("cm")};
  return make_germ(ctx.ring, list_or_empty(ctx.tf, "F"), dim, a, ctx.gen.limits);
}

json germ_json(const GermSpace& X) {
  return json{{"d", dec(X.dimension)}, {"icis", flag(X.is_icis)}, {"smooth", flag(X.is_smooth)}};
}

FunctionGerm function_of(const Context& ctx) { return FunctionGerm::function(need(ctx.tf, "f").scalar()); }

std::vector<ChartFixture> charts_in(const TaskFile& tf, const std::string& group) {
  std::vector<ChartFixture> out;
  for (const auto& c : tf.charts) {
    if (group.empty() || c.group == group) out.push_back(c.fixture);
  }
  return out;
}

json pullback_json(const PullbackResult& r) {
  json contributions = json::array();
  for (const auto& c : r.contributions) {
    contributions.push_back({{"chart", c.chart}, {"center", dec(c.center)}, {"value", dec(c.value)}});
  }
  return json{{"total", dec(r.total)}, {"contributions", contributions}};
}

json defect_json(const geometry::DefectReport& r) {
  return json{{"d", dec(r.d)},         {"mu_X", dec(r.mu_X)},     {"mu_f", dec(r.mu_f_slice)},
              {"mu_L", dec(r.mu_L_slice)}, {"e_f", dec(r.e_f)},   {"e_L", dec(r.e_L)},
              {"e_pair", dec(r.e_pair)}, {"defect", dec(r.defect)}};
}

std::vector<geometry::StratumDatum> strata_of(const Context& ctx) {
  std::vector<geometry::StratumDatum> out;
  for (const auto& s : ctx.tf.strata) {
    try {
      auto space = make_germ(ctx.ring, s.equations, s.dimension, {}, ctx.gen.limits);
      out.push_back({s.name, std::move(space), static_cast<std::int64_t>(s.weight.get_si())});
    } catch (const Error& e) {
      throw Error(e.code(), "stratum " + s.name + ": " + e.what());
    }
  }
  return out;
}

std::optional<std::uint64_t> optional_integer(const TaskFile& tf, const char* name) {
  if (auto v = tf.integer(name)) return to_u64(*v, name);
  return std::nullopt;
}

void run_colength(Context& ctx) {
  auto M = module_of(need(ctx.tf, "M"), ctx.ring);
  M.relations = list_or_empty(ctx.tf, "F");
  ctx.values["colength"] = colength(M, {}, ctx.gen.limits).to_string();
}

void run_dimension(Context& ctx) { ctx.values = germ_json(germ_of(ctx)); }

void run_br(Context& ctx) {
  auto X = germ_of(ctx);
  auto r = br_multiplicity(module_of(need(ctx.tf, "M"), ctx.ring), X, ctx.gen);
  ctx.values["e"] = dec(r.value);
  ctx.values["generic_reduction"] = flag(r.used_reduction);
  if (X.cm_asserted && !X.is_icis) ctx.notes.push_back("Cohen-Macaulay hypothesis asserted, not verified");
}

void run_milnor(Context& ctx) {
  if (ctx.tf.binding("F")) {
    auto X = germ_of(ctx);
    ctx.values["mu"] = dec(milnor_icis(X, ctx.gen));
  } else {
    ctx.values["mu"] = dec(milnor_hypersurface(need(ctx.tf, "g").scalar(), ctx.gen.limits));
  }
}

void run_mu_on_x(Context& ctx) {
  auto X = germ_of(ctx);
  auto f = function_of(ctx);
  const auto e = le_greuel_step(X, f.f(), ctx.gen.limits);
  const auto mu = milnor_icis(X, ctx.gen);
  if (e < mu) fail(ErrorCode::Inconsistent, "Le-Greuel colength is smaller than mu(X)");
  ctx.values = json{{"e_f", dec(e)}, {"mu_X", dec(mu)}, {"mu_f", dec(e - mu)}};
}

void run_defect(Context& ctx) { ctx.values = defect_json(geometry::defect(germ_of(ctx), function_of(ctx), ctx.gen)); }

void run_index(Context& ctx) {
  auto r = geometry::radial_index(germ_of(ctx), FunctionGerm::one_form(need(ctx.tf, "omega").list()), ctx.gen);
  ctx.values = json{{"d", dec(r.d)},          {"e_omega", dec(r.e_omega)}, {"e_L", dec(r.e_L)},
                    {"mu_X", dec(r.mu_X)},    {"e_pair", dec(r.e_pair)},   {"link_term", dec(r.link_term)},
                    {"index", dec(r.index)}};
}

void run_limit_tangent(Context& ctx) {
  auto h = ring::LinearForm::from_polynomial(need(ctx.tf, "h").scalar());
  ctx.values["limit_tangent"] = flag(geometry::is_limit_tangent_hyperplane(germ_of(ctx), h, ctx.gen));
}

void run_nonsingular(Context& ctx) {
  ctx.values["nonsingular"] = flag(geometry::is_nonsingular_function(germ_of(ctx), function_of(ctx), ctx.gen));
}

void run_isolated(Context& ctx) {
  ctx.values["isolated"] = flag(geometry::has_isolated_singularity(germ_of(ctx), function_of(ctx), ctx.gen));
}

void run_pair(Context& ctx) {
  PairSpec pair;
  pair.regime = *parse_regime(*ctx.tf.regime);
  auto X = germ_of(ctx);
  if (pair.regime == Regime::NFree || pair.regime == Regime::BothFiniteColength) {
    pair.inner = module_of(need(ctx.tf, "M"), ctx.ring);
    pair.outer = pair.regime == Regime::NFree ? SubmodulePresentation::free_module(ctx.ring, pair.inner.rank)
                                              : module_of(need(ctx.tf, "N"), ctx.ring);
  }
  if (pair.regime == Regime::IcisJacobianPair) pair.function = need(ctx.tf, "f").scalar();
  pair.charts = charts_in(ctx.tf, "");
  ctx.values["e_pair"] = dec(pair_multiplicity(pair, X, ctx.gen));
}

void run_integral(Context& ctx) {
  json gens = json::array();
  for (const auto& g : integral_ideal(ctx.ring, need(ctx.tf, "I").list(), ctx.gen.limits)) gens.push_back(g.to_string());
  ctx.values["generators"] = gens;
}

void run_pullback(Context& ctx) { ctx.values = pullback_json(pullback_multiplicity(charts_in(ctx.tf, ""), ctx.gen.limits)); }

json strata_json(const std::vector<geometry::StratumTerm>& terms, const char* key) {
  json out = json::array();
  for (const auto& t : terms) {
    out.push_back({{"name", t.name}, {"d", dec(t.dimension)}, {"weight", dec(t.weight)}, {key, dec(t.multiplicity)}});
  }
  return out;
}

void run_dmodule(Context& ctx) {
  auto r = geometry::dmodule_vanishing_cycles(strata_of(ctx), function_of(ctx), ctx.gen);
  ctx.values = json{{"total", dec(r.total)}, {"strata", strata_json(r.terms, "e_pair")}};
}

void run_milnor_fiber(Context& ctx) {
  auto terms = geometry::milnor_fiber_report(strata_of(ctx), function_of(ctx), ctx.gen);
  json out = json::array();
  for (const auto& t : terms) {
    out.push_back({{"stratum", t.name}, {"shift", dec(t.dimension)}, {"k", dec(t.multiplicity)},
                   {"complex_link", "L(" + t.name + ")"}});
  }
  ctx.values["strata"] = out;
  ctx.notes.push_back("cohomology groups are not assembled; complex links are opaque labels");
}

void run_b_report(Context& ctx) {
  geometry::BReportInput in{need(ctx.tf, "g").scalar(),
                            need(ctx.tf, "I").list(),
                            function_of(ctx),
                            charts_in(ctx.tf, "main"),
                            charts_in(ctx.tf, "jg"),
                            charts_in(ctx.tf, "generic"),
                            optional_integer(ctx.tf, "D_infty"),
                            optional_integer(ctx.tf, "lambda0"),
                            optional_integer(ctx.tf, "e_Jg_I"),
                            optional_integer(ctx.tf, "e_generic"),
                            optional_integer(ctx.tf, "mu_slice"),
                            ctx.tf.has_assertion("transverse-morse")};
  auto r = geometry::hypersurface_b_report(in, ctx.gen);
  json& v = ctx.values;
  v["b"] = dec(r.b);
  if (r.degenerate) {
    v["e_X_f"] = dec(r.e_X_f);
    v["mu_g"] = dec(r.mu_g);
    ctx.notes.push_back("I is the unit ideal: b = e(JM(X,f)) - mu(g)");
    return;
  }
  v["dim_VI"] = dec(r.dim_VI);
  v["e_main"] = dec(r.e_main);
  v["e_Jg_I"] = dec(r.e_Jg_I);
  v["D_infty"] = dec(r.D_infty);
  v["e_VI_f"] = dec(r.e_VI_f);
  if (r.e_JM_VI) v["e_JM_VI"] = dec(*r.e_JM_VI);
  if (r.e_generic) v["e_generic"] = dec(*r.e_generic);
  if (r.lambda0) v["lambda0"] = dec(*r.lambda0);
  v["lambda0_checked"] = flag(r.lambda0_checked);
  v["generic_checked"] = flag(r.generic_checked);
  if (!in.transverse_morse_asserted) {
    ctx.notes.push_back("transverse Morse type along V(I) was not asserted; b assumes it");
  }
}

void run_family(Context& ctx) {
  std::vector<std::vector<Rational>> samples;
  if (const Value* s = ctx.tf.binding("samples"); s && s->kind == Value::Kind::Matrix) {
    for (const auto& row : s->rows) {
      std::vector<Rational> values;
      for (const auto& p : row) values.push_back(p.constant_term());
      samples.push_back(std::move(values));
    }
  }
  auto scan = geometry::family_defect_scan(ctx.ring, ctx.tf.params, list_or_empty(ctx.tf, "F"),
                                           need(ctx.tf, "f").scalar(), samples, ctx.gen);
  json rows = json::array();
  for (const auto& s : scan.samples) {
    json params = json::array();
    for (const auto& r : s.values) params.push_back(rational_str(r));
    json row = defect_json(s.report);
    row["params"] = params;
    rows.push_back(row);
  }
  ctx.values["samples"] = rows;
  ctx.values["verdict"] = geometry::verdict_name(scan.verdict);
  if (scan.first_deviation) ctx.values["first_deviation"] = dec(*scan.first_deviation);
  ctx.notes.push_back(scan.note);
}

const std::map<std::string, std::function<void(Context&)>>& dispatch() {
  static const std::map<std::string, std::function<void(Context&)>> table = {
      {"colength", run_colength},       {"dimension", run_dimension},
      {"br-mult", run_br},              {"milnor", run_milnor},
      {"mu-on-X", run_mu_on_x},         {"defect", run_defect},
      {"index", run_index},             {"limit-tangent", run_limit_tangent},
      {"nonsingular", run_nonsingular}, {"isolated", run_isolated},
      {"pair-mult", run_pair},          {"integral-ideal", run_integral},
      {"pullback", run_pullback},       {"dmodule", run_dmodule},
      {"milnor-fiber", run_milnor_fiber}, {"b-report", run_b_report},
      {"family-scan", run_family}};
  return table;
}

json certification_json(const std::vector<Certification>& log) {
  json out = json::array();
  for (const auto& c : log) {
    json seeds = json::array();
    for (auto s : c.seeds) seeds.push_back(dec(s));
    out.push_back({{"what", c.what},
                   {"seeds", seeds},
                   {"bound", dec(c.bound)},
                   {"bound_doubled", flag(c.bound_doubled)},
                   {"value", c.value}});
  }
  return out;
}

json error_json(ErrorCode code, const std::string& message) {
  return json{{"code", std::string(error_name(code))}, {"exit_code", dec(exit_code(code))}, {"message", message}};
}

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

Report run_task(const TaskFile& tf, const RunOptions& options) {
  Report report;
  json& doc = report.document;
  doc["version"] = std::string(kVersion);
  doc["task"] = tf.task;
  doc["input_sha256"] = sha256_hex(tf.source);
  doc["assertions"] = tf.assertions;
  if (tf.regime) doc["regime"] = *tf.regime;

  Context ctx{tf, tf.params.empty() ? tf.vars : VariableSet(tf.ring_names), {}, {}, {}};
  std::vector<Certification> log;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto pick = [&](const std::optional<std::uint64_t>& from_flag, const char* name,
                    std::optional<std::uint64_t> fallback, std::uint64_t def) {
      if (from_flag) return *from_flag;
      if (auto v = tf.integer(name)) return to_u64(*v, name);
      return fallback.value_or(def);
    };
    ctx.gen.seed = pick(options.seed, "seed", options.env_seed, 1);
    ctx.gen.bound = pick(options.bound, "bound", std::nullopt, 32);
    ctx.gen.trials = static_cast<unsigned>(pick(options.trials, "trials", std::nullopt, 2));
    ctx.gen.limits.max_reductions = pick(options.max_steps, "max_steps", std::nullopt, ctx.gen.limits.max_reductions);
    ctx.gen.log = &log;
    doc["seed"] = dec(ctx.gen.seed);
    doc["bound"] = dec(ctx.gen.bound);
    doc["trials"] = dec(ctx.gen.trials);
    doc["max_steps"] = dec(ctx.gen.limits.max_reductions);
    if (ctx.gen.trials == 0) fail(ErrorCode::InvalidInput, "trials must be at least 1");

    auto it = dispatch().find(tf.task);
    if (it == dispatch().end()) fail(ErrorCode::InvalidInput, "unknown task `" + tf.task + "`");
    it->second(ctx);
    doc["status"] = "ok";
    doc["values"] = ctx.values;
    if (!ctx.notes.empty()) doc["notes"] = ctx.notes;
    report.exit_code = 0;
  } catch (const Error& e) {
    doc["status"] = "error";
    doc["error"] = error_json(e.code(), e.what());
    report.exit_code = exit_code(e.code());
  } catch (const std::bad_alloc&) {
    doc["status"] = "error";
    doc["error"] = error_json(ErrorCode::Resource, "out of memory");
    report.exit_code = exit_code(ErrorCode::Resource);
  } catch (const std::exception& e) {
    doc["status"] = "error";
    doc["error"] = error_json(ErrorCode::Inconsistent, std::string("internal error: ") + e.what());
    report.exit_code = exit_code(ErrorCode::Inconsistent);
  }
  doc["certification"] = certification_json(log);
  if (options.timings) doc["timings_ms"] = json{{"run", dec(elapsed_ms(start))}};
  return report;
}

Report run_source(std::string_view text, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  TaskFile tf;
  try {
    tf = parse_task(text);
  } catch (const Error& e) {
    Report report;
    json& doc = report.document;
    doc["version"] = std::string(kVersion);
    doc["input_sha256"] = sha256_hex(text);
    doc["status"] = "error";
    doc["error"] = error_json(e.code(), e.what());
    report.exit_code = exit_code(e.code());
    if (options.timings) doc["timings_ms"] = json{{"parse", dec(elapsed_ms(start))}};
    return report;
  }
  const auto parse_ms = elapsed_ms(start);
  Report report = run_task(tf, options);
  if (options.timings) report.document["timings_ms"]["parse"] = dec(parse_ms);
  return report;
}

}  // namespace germlab::cli
