#include "support/helpers.hpp"

#include "germlab/cli.hpp"

#include <doctest.h>

#include <random>
#include <functional>

using namespace germlab;
using namespace germlab::cli;
using testing::P;

namespace {

std::string parse_message(std::string_view text) {
  try {
    (void)parse_task(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    return e.what();
  }
  FAIL("expected a parse error");
  return {};
}

Report run(std::string_view text, RunOptions options = {}) { return run_source(text, options); }

std::string value(const Report& r, const char* key) { return r.document.at("values").at(key).get<std::string>(); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("task files parse") {
  auto tf = parse_task("ring x, y, z; F = [x^2+y^2+z^2]; f = x; task defect; seed = 7;");
  CHECK(tf.task == "defect");
  CHECK(tf.ring_names == std::vector<std::string>{"x", "y", "z"});
  CHECK(tf.binding("F")->list().size() == 1);
  CHECK(*tf.integer("seed") == 7);

  auto with_comments = parse_task("# header\nring x, y; # vars\nM = [[x, y], [0, x]]; task colength;\n");
  CHECK(with_comments.binding("M")->kind == Value::Kind::Matrix);
  CHECK(with_comments.binding("M")->rows.size() == 2);
}

TEST_CASE("parse errors carry a location and the expected tokens") {
  const auto unknown = parse_message("ring x; F = [y];");
  CHECK(unknown.find("unknown variable 'y'") != std::string::npos);
  CHECK(unknown.find("line 1, column 14") != std::string::npos);

  CHECK(parse_message("ring x, y; task defect;").find("task `defect` requires bindings F (may be empty list) and f") !=
        std::string::npos);
  CHECK(parse_message("ring x, y; f = 2x; task milnor;").find("expected") != std::string::npos);
  CHECK(parse_message("ring x; task milnor; task milnor;").find("duplicate task") != std::string::npos);
  CHECK(parse_message("ring x; ring y; task milnor;").find("duplicate ring") != std::string::npos);
  CHECK(parse_message("ring x; g = x^2;").find("missing task") != std::string::npos);
  CHECK(parse_message("g = 1; task milnor;").find("ring") != std::string::npos);
  CHECK(parse_message("ring x; g = x^2; task nothing;").find("unknown task") != std::string::npos);
}

TEST_CASE("polynomials round-trip through the printer") {
  auto v = testing::vars({"x", "y", "z"});
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    Polynomial p(v);
    for (int k = 0; k < 5; ++k) {
      std::vector<unsigned> e{unsigned(rng() % 4), unsigned(rng() % 4), unsigned(rng() % 4)};
      Rational c(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 5));
      c.canonicalize();
      p.add_term(ring::Monomial::from_exponents(e), c);
    }
    CHECK(parse_polynomial(p.to_string(), v) == p);
  }
}

TEST_CASE("defect task values") {
  auto r = run("ring x, y; F = []; f = x^2 + y^3; seed = 7; task defect;");
  CHECK(r.exit_code == 0);
  CHECK(r.document["status"] == "ok");
  CHECK(value(r, "mu_X") == "0");
  CHECK(value(r, "mu_f") == "2");
  CHECK(value(r, "mu_L") == "0");
  CHECK(value(r, "e_pair") == "2");
  CHECK(value(r, "defect") == "2");
  CHECK(r.document["seed"] == "7");
}

TEST_CASE("pullback and milnor task values") {
  CHECK(value(run("ring x, y, z; chart D1 (s, t) = [s, t]; task pullback;"), "total") == "1");
  CHECK(value(run("ring x, y; F = [x^3 + y^2]; task milnor;"), "mu") == "2");
  CHECK(value(run("ring x, y; g = x^3 + y^2; task milnor;"), "mu") == "2");
}

TEST_CASE("error reports map to exit codes and carry no values") {
  struct Case {
    const char* text;
    int code;
    const char* name;
  };
  const std::vector<Case> cases = {
      {"ring x; F = [y]; task dimension;", 2, "PARSE"},
      {"ring x, y, z; F = [x*y, x*z]; f = y + z; task defect;", 3, "UNSUPPORTED_REGIME"},
      {"ring x, y, z; F = [x^2+y^2+z^2]; f = x; bound = 0; task defect;", 4, "NON_GENERIC"},
      {"ring x, y; F = []; f = x^2; task defect;", 5, "NON_ISOLATED"},
      {"ring x, y, z; M = [x^5 + y^7 + z^4, x^3*y^2 - z^5, y^4*z - x^6]; max_steps = 2; task colength;", 6,
       "RESOURCE"},
      {"ring x, y; F = []; f = 1 + x; task defect;", 2, "INVALID_INPUT"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    auto r = run(c.text);
    CHECK(r.exit_code == c.code);
    CHECK(r.document["status"] == "error");
    CHECK(r.document["error"]["code"] == c.name);
    CHECK(r.document["error"]["exit_code"] == std::to_string(c.code));
    CHECK_FALSE(r.document.contains("values"));
    CHECK(emit_text(r).find("error: ") != std::string::npos);
  }
}

TEST_CASE("seed precedence: flag, file, environment, default") {
  const std::string with_seed = "ring x, y, z; F = [x^2+y^2+z^2]; f = x; seed = 5; task defect;";
  const std::string without = "ring x, y, z; F = [x^2+y^2+z^2]; f = x; task defect;";
  RunOptions flag;
  flag.seed = 9;
  flag.env_seed = 3;
  CHECK(run(with_seed, flag).document["seed"] == "9");
  RunOptions env;
  env.env_seed = 3;
  CHECK(run(with_seed, env).document["seed"] == "5");
  CHECK(run(without, env).document["seed"] == "3");
  CHECK(run(without).document["seed"] == "1");
  CHECK(run(without).document["bound"] == "32");
  CHECK(run(without).document["trials"] == "2");

  RunOptions opts;
  opts.trials = 3;
  opts.bound = 8;
  auto r = run(without, opts);
  CHECK(r.document["trials"] == "3");
  CHECK(r.document["bound"] == "8");
  for (const auto& c : r.document["certification"]) CHECK(c["seeds"].size() == 3);
}

TEST_CASE("report contents") {
  const std::string text = "ring x, y, z; F = [x^2+y^2+z^2]; f = x; assert icis; task defect;";
  auto r = run(text);
  const auto& doc = r.document;
  CHECK(doc["version"] == "0.1.0");
  CHECK(doc["task"] == "defect");
  CHECK(doc["input_sha256"] == sha256_hex(text));
  CHECK(doc["assertions"] == nlohmann::json::array({"icis"}));
  CHECK(doc["certification"].size() == 2);
  CHECK_FALSE(doc.contains("timings_ms"));
  for (const auto& [k, v] : doc["values"].items()) CHECK(v.is_string());

  RunOptions timed;
  timed.timings = true;
  auto t = run(text, timed);
  CHECK(t.document["timings_ms"].contains("run"));
  CHECK(t.document["timings_ms"].contains("parse"));
}

TEST_CASE("JSON output is sorted, newline-terminated and stable") {
  const std::string text = "ring x, y; params t; F = []; f = x^2 + t*x*y + y^3; samples = [[0], [1]]; task family-scan;";
  const auto a = emit_json(run(text));
  const auto b = emit_json(run(text));
  CHECK(a == b);
  CHECK(a.back() == '\n');
  // every scalar is a string, so no floating point can appear
  std::function<bool(const nlohmann::json&)> numeric = [&](const nlohmann::json& j) {
    if (j.is_number()) return true;
    if (!j.is_structured()) return false;
    for (const auto& x : j) {
      if (numeric(x)) return true;
    }
    return false;
  };
  CHECK_FALSE(numeric(nlohmann::json::parse(a)));
  CHECK(a.find("\"assertions\"") < a.find("\"bound\""));
  CHECK(a.find("\"bound\"") < a.find("\"certification\""));
}

TEST_CASE("text output mirrors the values") {
  auto text = emit_text(run("ring x, y; F = []; f = x^2 + y^3; task defect;"));
  CHECK(text.find("task: defect") != std::string::npos);
  CHECK(text.find("status: ok") != std::string::npos);
  CHECK(text.find("  defect = 2") != std::string::npos);
  CHECK(text.find("e_L") != std::string::npos);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("every task dispatches") {
  const std::vector<std::pair<std::string, std::string>> tasks = {
      {"colength", "ring x, y; M = [x^2, y^3]; task colength;"},
      {"dimension", "ring x, y; F = [x*y]; task dimension;"},
      {"br-mult", "ring x, y; M = [x^2, y^2]; task br-mult;"},
      {"milnor", "ring x, y; g = x^2 + y^2; task milnor;"},
      {"mu-on-X", "ring x, y; F = [y^2 - x^3]; f = x; task mu-on-X;"},
      {"defect", "ring x, y; F = []; f = x^2 + y^2; task defect;"},
      {"index", "ring x, y; F = []; omega = [x, y]; task index;"},
      {"limit-tangent", "ring x, y; F = [y^2 - x^3]; h = y; task limit-tangent;"},
      {"nonsingular", "ring x, y; F = [y^2 - x^3]; f = x; task nonsingular;"},
      {"isolated", "ring x, y; F = [y^2 - x^3]; f = x; task isolated;"},
      {"pair-mult", "ring x, y; regime n-free; M = [x, y]; task pair-mult;"},
      {"integral-ideal", "ring x, y; I = [x, y]; task integral-ideal;"},
      {"pullback", "ring x; chart C (s) = [s]; task pullback;"},
      {"dmodule", "ring x, y; f = x; stratum line dim 1 weight 1 = [y]; task dmodule;"},
      {"milnor-fiber", "ring x, y; f = x; stratum line dim 1 weight 1 = [y]; task milnor-fiber;"},
      {"b-report", "ring x, y, z; g = x^2 + y^2 + z^2; I = [1]; f = x; D_infty = 0; task b-report;"},
      {"family-scan", "ring x, y; params t; F = []; f = x^2 + y^2 + t*x; samples = [[0]]; task family-scan;"},
  };
  CHECK(tasks.size() == task_names().size());
  for (const auto& [name, text] : tasks) {
    CAPTURE(name);
    auto r = run(text);
    CHECK(r.document["task"] == name);
    CHECK(r.exit_code == 0);
    if (r.exit_code != 0) MESSAGE(r.document.dump());
  }
  CHECK(value(run("ring x, y; F = [y^2 - x^3]; h = y; task limit-tangent;"), "limit_tangent") == "true");
  CHECK(value(run("ring x, y; F = [y^2 - x^3]; f = x; task mu-on-X;"), "mu_X") == "2");
}

}  // TEST_SUITE
