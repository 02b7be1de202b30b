#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "krull/cli.hpp"
#include "krull/dsl.hpp"
#include "schema_validator.hpp"

using namespace krull;
using nlohmann::json;

namespace {

const test::SchemaValidator& schema() {
  static const auto v = test::SchemaValidator::from_file(KRULL_SCHEMA_PATH);
  return v;
}

void require_schema_valid(const json& report) {
  const auto errs = schema().errors(report);
  INFO(report.dump(2));
  for (const auto& e : errs) INFO(e);
  CHECK(errs.empty());
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("krull_cli_" + name);
}

const std::vector<std::string> expression_corpus{
    "Q",
    "Fp(5)",
    "Fp(2)",
    "FunField(Q; u)",
    "FunField(Fp(7); u,v)",
    "Ext(Q; 0)",
    "Ext(Q; 1)",
    "Ext(Q; inf)",
    "Ext(Q; 2; a^2-2)",
    "Ext(Q; 0; a^2-2, b^3-a)",
    "Ext(FunField(Q;u); 1; s^2-u)",
    "Ext(Fp(3); 1)",
    "Poly(Q; x)",
    "Poly(Q; x,y,z)",
    "Poly(Fp(5); x,y)",
    "Poly(FunField(Q;u); x)",
    "Poly(Poly(Q;x); y)",
    "Poly(Ext(Q;1); y)",
    "Quot(Poly(Q;x,y); x*y)",
    "Quot(Poly(Q;x,y); y^2-x^3)",
    "Quot(Poly(Q;x,y,z); x*z, y*z)",
    "Quot(Poly(Q;a,b); a^2-2, b^2-2)",
    "Quot(Poly(Q;x,y); x*y-1)",
    "Quot(Poly(Fp(5);x); x^5-x)",
    "Quot(Poly(Q;x,y); 3/2*x^2*y - y + 1)",
    "Quot(Poly(FunField(Q;u);x); x^2-u)",
    "Quot(Poly(FunField(Q;u);x,y); (u+1)*x^2-u, u*y-x/(u-1))",
    "Quot(Quot(Poly(Q;x,y); x*y); x)",
    "Loc(Poly(Q;x,y); x^2+y^2)",
    "Loc(Quot(Poly(Q;x,y); x*y); x+y)",
    "Loc(Quot(Poly(Q;x,y); x*y); x)",
    "Loc(Poly(Fp(5);x); x)",
    "LocSub(Poly(Q;x,y); x)",
    "LocSub(Poly(Q;x,y,z); x, y)",
    "LocSub(Quot(Poly(Q;x,y,z); z^2-x*y); x)",
    "Tensor(Ext(Q;1), Ext(Q;1))",
    "Tensor(Ext(Q;1), Ext(Q;2), Ext(Q;4))",
    "Tensor(Ext(Q;inf), Ext(Q;inf))",
    "Tensor(Ext(Q;2), Ext(Q;inf))",
    "Tensor(Ext(Q;1), Quot(Poly(Q;x,y); x*y))",
    "Tensor(Ext(Q;1), Poly(Q;y))",
    "Tensor(Poly(Q;x), Poly(Q;y))",
    "Tensor(Poly(Q;x), Poly(Q;x))",
    "Tensor(Ext(Q;1), Poly(FunField(Q;u); y))",
    "Tensor(Q, Poly(Q;x))",
    "Tensor(Poly(FunField(Q;u);x), Poly(FunField(Q;u);y); Q)",
    "Tensor(Tensor(Ext(Q;1), Ext(Q;1)), Ext(Q;1))",
    "Tensor(Loc(Poly(Q;x); x), Poly(Q;y))",
    "Frac(Poly(Q;x,y))",
    "Frac(Quot(Poly(Q;x,y); y^2-x^3))",
    "Frac(Ext(Q;1))",
    "Frac(Poly(Fp(5); x))",
    "Poly(Frac(Poly(Q;x)); y)",
    "Poly(Tensor(Ext(Q;1), Ext(Q;1)); z)",
    "  Poly( Q ;  x , y )  ",
    "Quot(Poly(Q;x,y);\n  x*y)",
    "Tensor(Ext(Q;1),Ext(Q;2),Ext(Q;4))",
    "Quot(Poly(Q;x,y); x^2*y + 2*x*y^2 - 7)",
};

struct ErrorCase {
  std::string text;
  std::size_t line;
  std::size_t column;
  std::string fragment;
};

}  // namespace

TEST_CASE("expression grammar round-trips through canonical printing") {
  CHECK(expression_corpus.size() >= 50);
  for (const auto& text : expression_corpus) {
    INFO(text);
    const auto first = parse_ring_expr(text);
    const auto printed = first.to_string();
    const auto second = parse_ring_expr(printed);
    CHECK(first == second);
    CHECK(second.to_string() == printed);
  }
}

TEST_CASE("grammar examples build the documented nodes") {
  const auto t = parse_ring_expr("Tensor(Ext(Q; 1), Ext(Q; 1))");
  REQUIRE(t.kind() == RingExpr::Kind::Tensor);
  REQUIRE(t.children().size() == 2);
  for (const auto& leg : t.children()) {
    CHECK(leg.kind() == RingExpr::Kind::FieldExt);
    CHECK(leg.extension().trdeg == Count::finite(1));
    CHECK(leg.extension().base == CoefficientField::rationals());
  }

  const auto l = parse_ring_expr("Loc(Quot(Poly(Q; x,y); x*y); x+y)");
  REQUIRE(l.kind() == RingExpr::Kind::LocElement);
  CHECK(l.child().kind() == RingExpr::Kind::Quotient);
  CHECK(l.child().child().variables() == std::vector<std::string>{"x", "y"});
  CHECK(l.polynomials().front().to_string() == "x + y");

  const auto inf = parse_ring_expr("Tensor(Ext(Q; inf), Ext(Q; inf))");
  for (const auto& leg : inf.children()) CHECK(leg.extension().trdeg.infinite);
}

TEST_CASE("syntax errors carry line and column") {
  const std::vector<ErrorCase> cases{
      {"Tensor(Ext(Q;1),Poly(Q;y)", 1, 26, "expected ')'"},
      {"Quot(Poly(Q;x,y);\n  x*w)", 2, 5, "w"},
      {"Loc(Poly(Q;x); x, x+1)", 1, 1, "exactly one"},
      {"Blah(Q)", 1, 1, "unknown constructor"},
      {"Poly(Q; x) junk", 1, 12, "trailing"},
      {"Ext(Q; 1; a^2-b^2)", 1, 11, "more than one"},
      {"Ext(Q; -1)", 1, 8, ""},
      {"Fp(4)", 1, 4, ""},
      {"", 1, 1, "expected a ring expression"},
  };
  for (const auto& c : cases) {
    INFO(c.text);
    try {
      parse_ring_expr(c.text);
      FAIL("accepted");
    } catch (const ParseError& e) {
      CHECK(e.line() == c.line);
      CHECK(e.column() == c.column);
      CHECK(std::string(e.what()).find(c.fragment) != std::string::npos);
    }
  }
}

TEST_CASE("commands round-trip through print and parse") {
  std::vector<std::vector<std::string>> argvs{
      {"dim", "Tensor(Ext(Q;1),Ext(Q;2),Ext(Q;4))"},
      {"dim", "--assert-noetherian", "--assert-domain", "Frac(Poly(Q;x))"},
      {"dim", "--budget", "17", "--max-vars", "5", "--format", "text", "Q"},
      {"gb", "--order", "lex", "Quot(Poly(Q;x,y); x*y)"},
      {"gb", "--out", "/tmp/report.json", "Quot(Poly(Q;x,y); x*y)"},
      {"eliminate", "--keep", "x,y", "Quot(Poly(Q;x,y,z); x-z, y-z^2)"},
      {"eliminate", "--keep", "x", "--keep", "y", "Quot(Poly(Q;x,y,z); x-z)"},
      {"quotient", "Quot(Poly(Q;x,y); x*y)", "x"},
      {"saturate", "Quot(Poly(Q;x,y); x*y, x^2)", "x"},
      {"nzd", "Quot(Poly(Q;x,y); x*y)", "x"},
      {"nzd", "Quot(Poly(Q;x,y); x*y)", "--", "-x+1"},
      {"chain", "--witnesses", "u", "--fresh", "X1", "Poly(Q;u)"},
      {"chain", "--witnesses", "u,v", "Poly(Q;u,v)"},
      {"chain", "--witnesses", "y", "--base-prime", "x", "--base-prime", "x,y-1", "--assert-primes",
       "Quot(Poly(Q;x,y); x*y)"},
      {"verify", "/tmp/certificate.json"},
      {"trdeg", "--assert-domain", "Quot(Poly(Q;x,y); y^2-x^3)"},
  };
  for (const auto& argv : argvs) {
    INFO(argv.front() << " " << argv.back());
    const auto c = parse_command(argv);
    const auto printed = print_command(c);
    CHECK(parse_command(printed) == c);
    CHECK(print_command(parse_command(printed)) == printed);
  }

  Command c;
  c.verb = Verb::Nzd;
  c.expression = "Quot(Poly(Q;x,y); x*y)";
  c.element = "-x";
  c.order = "lex";
  c.budget = 9;
  c.format = OutputFormat::Text;
  c.out = "r.txt";
  CHECK(parse_command(print_command(c)) == c);

  c = Command{};
  c.verb = Verb::Chain;
  c.expression = "Poly(Q;u1,u2)";
  c.witnesses = {"u1", "-u2"};
  c.fresh = {"X1", "X2"};
  c.base_primes = {"u1-u2, u1^2"};
  CHECK(parse_command(print_command(c)) == c);
}

TEST_CASE("malformed arguments are usage errors") {
  const std::vector<std::vector<std::string>> bad{
      {},
      {"frob", "Q"},
      {"dim"},
      {"nzd", "Q"},
      {"dim", "--order", "deglex", "Q"},
      {"dim", "--budget", "0", "Q"},
      {"dim", "--format", "xml", "Q"},
      {"eliminate", "Poly(Q;x)"},
      {"chain", "Poly(Q;u)"},
      {"chain", "--witnesses", "u", "--fresh", "X1,X2", "Poly(Q;u)"},
      {"dim", "Q", "extra"},
  };
  for (const auto& argv : bad) {
    INFO(argv.size());
    CHECK_THROWS_AS(parse_command(argv), UsageError);
    const auto o = run_arguments(argv);
    CHECK(o.exit_code == 1);
    CHECK(o.report["status"] == "usage-error");
    require_schema_valid(o.report);
  }
  CHECK_THROWS_AS(parse_command({"dim", "--help"}), HelpRequested);
}

TEST_CASE("exit-code contract by error class") {
  struct Fixture {
    std::vector<std::string> argv;
    int code;
    std::string error_type;
  };
  const std::vector<Fixture> fixtures{
      {{"dim", "Tensor(Ext(Q;1),Ext(Q;1))"}, 0, ""},
      {{"nzd", "Quot(Poly(Q;x,y); x*y)", "x+y"}, 0, ""},
      {{"dim", "Tensor(Ext(Q;1),Poly(Q;y)"}, 1, "ParseError"},
      {{"nzd", "Quot(Poly(Q;x,y); x*y)", "w"}, 1, "ParseError"},
      {{"frob", "Q"}, 1, "UsageError"},
      {{"dim", "Frac(Quot(Poly(Q;x,y); x*y))"}, 1, "UsageError"},
      {{"gb", "Tensor(Ext(Q;1),Ext(Q;1))"}, 1, "UsageError"},
      {{"verify", "/nonexistent/certificate.json"}, 1, "UsageError"},
      {{"chain", "--witnesses", "y", "Quot(Poly(Q;x,y); x*y)"}, 1, "UsageError"},
      {{"gb", "--max-vars", "2", "Poly(Q;x,y,z)"}, 1, "UsageError"},
      {{"trdeg", "Quot(Poly(Q;x,y); x*y)"}, 1, "UsageError"},
      {{"gb", "--budget", "2", "Quot(Poly(Q;x,y,z); x^2*y-z, x*y^2-x, y*z-x^2)"}, 2, "BudgetExhausted"},
  };
  for (const auto& f : fixtures) {
    INFO(f.argv.back());
    const auto o = run_arguments(f.argv);
    CHECK(o.exit_code == f.code);
    CHECK(o.report["exit_code"] == f.code);
    if (f.code == 0) {
      CHECK(o.report["status"] == "ok");
      CHECK(o.report["error"].is_null());
    } else {
      CHECK(o.report["error"]["type"] == f.error_type);
    }
    require_schema_valid(o.report);
  }

  // Contradictory bounds never arise from correct rules, so the class is
  // exercised through the failure path the runner uses.
  Command c;
  c.expression = "Q";
  const auto inconsistent =
      failure_outcome(c, std::make_exception_ptr(InconsistencyError("THM24-FORMULA exact 1 vs KERNEL exact 2")));
  CHECK(inconsistent.exit_code == 3);
  CHECK(inconsistent.report["status"] == "internal-error");
  CHECK(inconsistent.report["error"]["type"] == "InconsistencyError");
  require_schema_valid(inconsistent.report);
  const auto internal = failure_outcome(c, std::make_exception_ptr(std::logic_error("bug")));
  CHECK(internal.exit_code == 3);
  CHECK(internal.report["error"]["type"] == "InternalError");
  require_schema_valid(internal.report);
}

TEST_CASE("documented run examples") {
  SUBCASE("tensor of three extensions") {
    const auto o = run_arguments({"dim", "Tensor(Ext(Q;1),Ext(Q;2),Ext(Q;4))"});
    CHECK(o.exit_code == 0);
    CHECK(o.report["result"]["dimension"]["kind"] == "exact");
    CHECK(o.report["result"]["dimension"]["value"] == 3);
    bool cited = false;
    for (const auto& t : o.report["trace"]) {
      cited = cited || (t["rule"] == "THM24-FORMULA" && t["effect"] == "exact" && t["value"] == 3 &&
                        t["node"] == "Tensor(Ext(Q; 1), Ext(Q; 2), Ext(Q; 4))");
    }
    CHECK(cited);
    require_schema_valid(o.report);
  }
  SUBCASE("zero-divisor") {
    const auto o = run_arguments({"nzd", "Quot(Poly(Q;x,y); x*y)", "x"});
    CHECK(o.exit_code == 0);
    CHECK(o.report["result"]["zero_divisor"] == true);
    CHECK(o.report["result"]["classification"] == "zero-divisor");
    require_schema_valid(o.report);
  }
  SUBCASE("witness chain") {
    const auto o = run_arguments({"chain", "--witnesses", "u", "--fresh", "X1", "Poly(Q;u)"});
    CHECK(o.exit_code == 0);
    CHECK(o.report["result"]["lower_bound"] == 1);
    CHECK(o.report["result"]["verification"]["ok"] == true);
    CHECK(o.report["result"]["certificate"]["links"].size() == 2);
    require_schema_valid(o.report);
  }
}

TEST_CASE("every verb emits schema-valid reports") {
  const std::vector<std::vector<std::string>> runs{
      {"dim", "Loc(Quot(Poly(Q;x,y); x*y); x+y)"},
      {"dim", "Tensor(Ext(Q;1), Quot(Poly(Q;x,y); x*y))"},
      {"dim", "Tensor(Ext(Q;inf), Ext(Q;inf))"},
      {"dim", "Tensor(Frac(Quot(Poly(Q;x,y); y^2-x^3)), Poly(Q;z))"},
      {"dim", "Quot(Poly(Q;x); x, x-1)"},
      {"dim", "--format", "text", "Frac(Poly(Q;x,y))"},
      {"gb", "--order", "lex", "Quot(Poly(Q;x,y); x^2-y, x*y-1)"},
      {"gb", "Quot(Poly(FunField(Q;u);x,y); (u+1)*x^2-u, u*y-x/(u-1))"},
      {"eliminate", "--keep", "x", "Quot(Poly(Q;x,y); x-y^2, y^3-1)"},
      {"quotient", "Quot(Poly(Q;x,y); x*y)", "x"},
      {"saturate", "Quot(Poly(Q;x,y); x*y, x^2)", "x"},
      {"nzd", "Quot(Poly(Q;x,y); x*y)", "0"},
      {"nzd", "Loc(Poly(Q;x,y); x)", "y"},
      {"chain", "--witnesses", "u1,u2", "Poly(Q;u1,u2)"},
      {"chain", "--witnesses", "y", "--base-prime", "x", "Quot(Poly(Q;x,y); x*y)"},
      {"trdeg", "Quot(Poly(Q;x,y); y^2-x^3)"},
      {"trdeg", "--assert-domain", "Quot(Poly(Q;x,y,z); x*y-z^2, x^3-y*z)"},
  };
  for (const auto& argv : runs) {
    INFO(argv.back());
    const auto o = run_arguments(argv);
    CHECK(o.exit_code == 0);
    require_schema_valid(o.report);
    CHECK(o.report["command"]["argv"] == print_command(parse_command(argv)));
  }
}

TEST_CASE("exact dimensions always rest on a closed rule or the kernel") {
  for (const auto& text : expression_corpus) {
    const auto o = run_arguments({"dim", text});
    if (o.exit_code != 0 || o.report["result"]["dimension"]["kind"] != "exact") continue;
    INFO(text);
    bool closed = !o.report["kernel_checks"].empty();
    for (const auto& t : o.report["trace"]) closed = closed || t["effect"] == "exact";
    CHECK(closed);
    require_schema_valid(o.report);
  }
}

TEST_CASE("validator rejects malformed reports") {
  auto report = run_arguments({"dim", "Q"}).report;
  CHECK(schema().errors(report).empty());
  auto missing = report;
  missing.erase("trace");
  CHECK(!schema().errors(missing).empty());
  auto extra = report;
  extra["surprise"] = 1;
  CHECK(!schema().errors(extra).empty());
  auto wrong = report;
  wrong["exit_code"] = 7;
  CHECK(!schema().errors(wrong).empty());
  auto bad_trace = report;
  bad_trace["trace"][0]["effect"] = "maybe";
  CHECK(!schema().errors(bad_trace).empty());
}

TEST_CASE("chain certificates survive serialization and re-verification") {
  const auto o = run_arguments({"chain", "--witnesses", "y", "--base-prime", "x", "Quot(Poly(Q;x,y); x*y)"});
  REQUIRE(o.exit_code == 0);
  const auto cert = o.report["result"]["certificate"];
  const auto chain = chain_from_json(cert);
  CHECK(chain_to_json(chain) == cert);
  CHECK(verify_chain(chain).ok());

  const auto report_path = temp_file("report.json");
  const auto bare_path = temp_file("bare.json");
  std::ofstream(report_path) << o.rendered;
  std::ofstream(bare_path) << cert.dump();
  for (const auto& path : {report_path, bare_path}) {
    const auto v = run_arguments({"verify", path.string()});
    CHECK(v.exit_code == 0);
    CHECK(v.report["result"]["lower_bound"] == o.report["result"]["lower_bound"]);
    require_schema_valid(v.report);
  }

  // A witness that is not the element the last link substitutes.
  auto mutated = cert;
  mutated["witnesses"][0] = "y + 1";
  const auto mutated_path = temp_file("mutated.json");
  std::ofstream(mutated_path) << mutated.dump();
  const auto rejected = run_arguments({"verify", mutated_path.string()});
  CHECK(rejected.exit_code == 1);
  CHECK(rejected.report["result"]["verification"]["ok"] == false);
  CHECK(rejected.report["result"]["lower_bound"].is_null());
  require_schema_valid(rejected.report);

  // Dropping the last link's generator collapses the strict step.
  auto collapsed = cert;
  collapsed["links"].back()["generators"] = collapsed["links"][collapsed["links"].size() - 2]["generators"];
  std::ofstream(mutated_path) << collapsed.dump();
  CHECK(run_arguments({"verify", mutated_path.string()}).exit_code == 1);

  std::ofstream(mutated_path) << R"({"ring": {"field": "Q"}})";
  const auto malformed = run_arguments({"verify", mutated_path.string()});
  CHECK(malformed.exit_code == 1);
  CHECK(malformed.report["error"]["message"].get<std::string>().find("malformed certificate") != std::string::npos);
  std::ofstream(mutated_path) << "{not json";
  CHECK(run_arguments({"verify", mutated_path.string()}).exit_code == 1);

  for (const auto& p : {report_path, bare_path, mutated_path}) std::filesystem::remove(p);
}

TEST_CASE("asserted primes are flagged") {
  // (x*y, x^2 + y^2) has radical (x, y) and is not prime; the assertion is
  // taken at face value and flagged, never silently trusted.
  const auto o = run_arguments({"chain", "--witnesses", "z", "--base-prime", "x^2 + y^2", "--assert-primes",
                                "Quot(Poly(Q;x,y,z); x*y)"});
  REQUIRE(o.exit_code == 0);
  CHECK(o.report["result"]["verification"]["asserted"] == true);
  CHECK(o.report["result"]["certificate"]["links"][0]["primality"]["kind"] == "Asserted");
  require_schema_valid(o.report);
}

TEST_CASE("reports are written to --out and text format is readable") {
  const auto path = temp_file("out.txt");
  const auto o = run_arguments({"dim", "--format", "text", "--out", path.string(), "Tensor(Ext(Q;1),Ext(Q;1))"});
  CHECK(o.exit_code == 0);
  CHECK(o.rendered.find("dimension: 1") != std::string::npos);
  CHECK(o.rendered.find("THM24-FORMULA exact 1") != std::string::npos);
  CHECK(o.rendered.find("status: ok (exit 0)") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("basis output is canonical and re-readable") {
  const auto o = run_arguments({"gb", "Quot(Poly(FunField(Q;u);x,y); (u+1)*x^2-u, u*y-x/(u-1))"});
  REQUIRE(o.exit_code == 0);
  std::string gens;
  for (const auto& g : o.report["result"]["basis"]) gens += (gens.empty() ? "" : ", ") + g.get<std::string>();
  const auto again = run_arguments({"gb", "Quot(Poly(FunField(Q;u);x,y); " + gens + ")"});
  REQUIRE(again.exit_code == 0);
  CHECK(again.report["result"]["basis"] == o.report["result"]["basis"]);

  const auto lex = run_arguments({"gb", "--order", "lex", "Quot(Poly(Q;x,y); x^2-y, x*y-1)"});
  CHECK(lex.report["result"]["basis"] == json::array({"-y^2 + x", "y^3 - 1"}));
  CHECK(lex.report["result"]["order"] == "lex");
}
