#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "krull/calculus.hpp"
#include "krull/cli.hpp"
#include "krull/dsl.hpp"

namespace krull {
namespace {

using nlohmann::json;

json count_json(const Count& c) { return c.infinite ? json("inf") : json(c.value); }

json dimension_json(const DimensionValue& v) {
  json j;
  switch (v.kind()) {
    case DimensionValue::Kind::Exact:
      j["kind"] = "exact";
      j["value"] = v.value();
      break;
    case DimensionValue::Kind::EmptyRing:
      j["kind"] = "empty";
      j["value"] = nullptr;
      break;
    case DimensionValue::Kind::Infinite:
      j["kind"] = "infinite";
      j["value"] = nullptr;
      break;
    case DimensionValue::Kind::Interval:
      j["kind"] = "interval";
      j["value"] = nullptr;
      break;
  }
  const bool bounded = v.kind() == DimensionValue::Kind::Exact || v.kind() == DimensionValue::Kind::Interval ||
                       v.kind() == DimensionValue::Kind::Infinite;
  j["lower"] = bounded ? json(v.lower()) : json(nullptr);
  j["upper"] = v.upper() && v.kind() != DimensionValue::Kind::EmptyRing ? json(*v.upper()) : json(nullptr);
  j["text"] = v.to_string();
  return j;
}

json trace_json(const TraceEntry& t) {
  return {{"rule", t.rule},
          {"citation", t.citation},
          {"node", t.node},
          {"effect", to_string(t.effect)},
          {"value", t.effect == Effect::Note || t.effect == Effect::Empty ? json(nullptr) : count_json(t.value)},
          {"premises", t.premises}};
}

json kernel_json(const KernelCheck& k) {
  return {{"node", k.node}, {"method", k.method}, {"value", dimension_json(k.value)}, {"consistent", k.consistent}};
}

json ring_json(const PolynomialRing& ring) {
  return {{"field", ring.field().to_string()}, {"variables", ring.variables()}};
}

json strings(const std::vector<Polynomial>& polys) {
  json out = json::array();
  for (const auto& p : polys) out.push_back(p.to_string());
  return out;
}

std::string shell_quote(const std::string& s) {
  const bool plain = !s.empty() && s.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
                                                       "0123456789_=.,/:+-") == std::string::npos;
  if (plain) return s;
  std::string out = "'";
  for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

class Runner {
 public:
  Runner(const Command& c, json& report) : c_(c), report_(report) {
    engine_.max_pair_reductions = c.budget;
    engine_.max_variables = c.max_vars;
  }

  void run() {
    switch (c_.verb) {
      case Verb::Dim:
        return dim();
      case Verb::Gb:
        return gb();
      case Verb::Eliminate:
        return elimination();
      case Verb::Quotient:
      case Verb::Saturate:
        return colon();
      case Verb::Nzd:
        return nzd();
      case Verb::Chain:
        return chain();
      case Verb::Verify:
        return verify();
      case Verb::Trdeg:
        return trdeg();
    }
  }

 private:
  RingExpr expression() {
    auto e = parse_ring_expr(c_.expression);
    report_["input"]["canonical"] = e.to_string();
    return e;
  }

  AffineAlgebra affine(const RingExpr& e) {
    if (!e.flat()) throw UsageError(e.to_string() + " has no affine presentation");
    check_variable_cap(e.flat()->ring(), engine_);
    report_["input"]["presentation"] = e.flat()->to_string();
    return *e.flat();
  }

  Polynomial element(const AffineAlgebra& a) { return parse_polynomial(c_.element, a.ring()); }

  std::vector<Polynomial> basis(const IdealPresentation& ideal) {
    return ideal.groebner_basis(parse_order(c_.order), engine_);
  }

  void record(const DimensionResult& r) {
    for (const auto& t : r.trace) report_["trace"].push_back(trace_json(t));
    for (const auto& k : r.kernel_checks) report_["kernel_checks"].push_back(kernel_json(k));
  }

  void dim() {
    const auto e = expression();
    EvaluateOptions opts{engine_, c_.assert_noetherian, c_.assert_domain};
    const auto r = evaluate(e, opts);
    record(r);
    if (r.value.is_exact()) {
      const bool closed = std::any_of(r.trace.begin(), r.trace.end(), [](const auto& t) { return t.effect == Effect::Exact; });
      if (!closed && r.kernel_checks.empty()) {
        throw InconsistencyError("exact dimension without a closed rule or kernel computation");
      }
    }
    report_["result"] = {{"dimension", dimension_json(r.value)},
                         {"flattened", r.flattened ? json(r.flattened->to_string()) : json(nullptr)},
                         {"asserted", r.asserted},
                         {"trdeg", r.trdeg ? json(*r.trdeg) : json(nullptr)}};
  }

  void gb() {
    const auto a = affine(expression());
    report_["result"] = {{"ring", ring_json(a.ring())},
                         {"order", parse_order(c_.order).key()},
                         {"basis", strings(basis(a.presentation()))}};
  }

  void elimination() {
    const auto a = affine(expression());
    const auto j = eliminate(a.presentation(), c_.keep, engine_);
    report_["result"] = {{"ring", ring_json(a.ring())},
                         {"keep", c_.keep},
                         {"order", parse_order(c_.order).key()},
                         {"basis", strings(basis(j))}};
  }

  void colon() {
    const auto a = affine(expression());
    const auto f = element(a);
    const auto j = c_.verb == Verb::Quotient ? ideal_quotient(a.presentation(), f, engine_)
                                             : saturate(a.presentation(), f, engine_);
    report_["result"] = {{"ring", ring_json(a.ring())},
                         {"element", f.to_string()},
                         {"order", parse_order(c_.order).key()},
                         {"basis", strings(basis(j))}};
  }

  void nzd() {
    const auto a = affine(expression());
    const auto f = element(a);
    const auto status = zero_divisor_status(a, f, engine_);
    report_["result"] = {{"element", f.to_string()},
                         {"classification", to_string(status)},
                         {"zero_divisor", status != ZeroDivisorStatus::NonZeroDivisor}};
  }

  std::vector<std::string> fresh_names(const PolynomialRing& ring) const {
    if (!c_.fresh.empty()) return c_.fresh;
    const auto& params = ring.field().parameters();
    std::vector<std::string> out;
    for (std::size_t i = 1; out.size() < c_.witnesses.size(); ++i) {
      const auto name = "X" + std::to_string(i);
      if (ring.index_of(name) || std::find(params.begin(), params.end(), name) != params.end()) continue;
      out.push_back(name);
    }
    return out;
  }

  CertificatePtr base_certificate(const IdealPresentation& ideal) const {
    if (auto cert = detect_prime_certificate(ideal)) return cert;
    if (c_.assert_primes) return make_certificate(Asserted{"--assert-primes"});
    throw UsageError("no primality certificate found for " + ideal.to_string() +
                     "; pass --assert-primes to accept it as prime");
  }

  void chain() {
    const auto a = affine(expression());
    const auto& ring = a.ring();
    std::vector<IdealPresentation> base;
    if (c_.base_primes.empty()) base.push_back(a.presentation());
    for (const auto& text : c_.base_primes) {
      std::vector<Polynomial> gens;
      if (!a.presentation().is_zero_ideal()) gens = a.presentation().generators();
      for (auto& g : parse_polynomial_list(text, ring)) gens.push_back(std::move(g));
      base.emplace_back(ring, std::move(gens));
    }
    std::vector<CertificatePtr> certs;
    for (const auto& p : base) certs.push_back(base_certificate(p));
    std::vector<Polynomial> witnesses;
    for (const auto& w : c_.witnesses) witnesses.push_back(parse_polynomial(w, ring));
    const auto chain = build_chain(a, base, certs, witnesses, fresh_names(ring), engine_);
    report_["result"] = {{"certificate", chain_to_json(chain)}};
    verified(chain);
  }

  void verify() {
    std::ifstream in(c_.expression);
    if (!in) throw UsageError("cannot read " + c_.expression);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError("invalid JSON in " + c_.expression + ": " + e.what());
    }
    const bool is_report = doc.is_object() && doc.contains("result") && doc["result"].is_object() &&
                           doc["result"].contains("certificate");
    const auto chain = chain_from_json(is_report ? doc["result"]["certificate"] : doc);
    report_["result"] = json::object();
    verified(chain);
  }

  // Stores the verification outcome; a rejected chain is a user error.
  void verified(const ChainCertificate& chain) {
    const auto v = verify_chain(chain, engine_);
    auto& r = report_["result"];
    r["verification"] = {{"ok", v.ok()},
                         {"strict", v.strict},
                         {"avoidance", v.avoidance},
                         {"evaluation", v.evaluation},
                         {"primality", v.primality},
                         {"asserted", v.asserted},
                         {"details", v.details}};
    r["length"] = chain.links.size() - 1;
    r["bound"] = "dim K(" + join_t_variables(chain) + ") ⊗ A >= length";
    r["lower_bound"] = v.ok() ? json(chain.links.size() - 1) : json(nullptr);
    if (!v.ok()) {
      std::string why;
      for (const auto& d : v.details) why += (why.empty() ? "" : "; ") + d;
      throw UsageError("chain failed verification" + (why.empty() ? std::string() : ": " + why));
    }
  }

  static std::string join_t_variables(const ChainCertificate& chain) {
    std::string out;
    for (auto i : chain.t_variables) out += (out.empty() ? "" : ",") + chain.ring.variables()[i];
    return out;
  }

  void trdeg() {
    const auto e = expression();
    EvaluateOptions opts{engine_, false, c_.assert_domain};
    const auto r = evaluate(e, opts);
    record(r);
    if (r.trdeg) {
      report_["result"] = {{"trdeg", *r.trdeg}, {"asserted", r.asserted}, {"method", "calculus"}};
      return;
    }
    const auto a = affine(e);
    CertificatePtr cert = detect_prime_certificate(a.presentation());
    if (!cert && c_.assert_domain) cert = make_certificate(Asserted{"--assert-domain"});
    if (!cert) {
      throw UsageError("no domain certificate for " + a.to_string() + "; pass --assert-domain to accept it");
    }
    const auto t = trdeg_affine_domain(a, *cert, engine_);
    report_["result"] = {{"trdeg", t.trdeg}, {"asserted", t.domain.asserted}, {"method", "kernel"}};
  }

  const Command& c_;
  json& report_;
  EngineOptions engine_;
};

json skeleton(const Command& c) {
  const auto argv = print_command(c);
  std::string text = "krull";
  for (const auto& a : argv) text += " " + shell_quote(a);
  json input = {{"expression", c.expression}, {"canonical", nullptr}, {"presentation", nullptr}};
  if (c.verb == Verb::Verify) input = {{"file", c.expression}, {"canonical", nullptr}, {"presentation", nullptr}};
  input["element"] = c.element.empty() ? json(nullptr) : json(c.element);
  return {{"schema_version", report_schema_version},
          {"command", {{"verb", to_string(c.verb)}, {"argv", argv}, {"text", text}}},
          {"input", input},
          {"options",
           {{"order", c.order},
            {"budget", c.budget},
            {"max_vars", c.max_vars},
            {"format", c.format == OutputFormat::Json ? "json" : "text"}}},
          {"status", "ok"},
          {"exit_code", 0},
          {"result", nullptr},
          {"trace", json::array()},
          {"kernel_checks", json::array()},
          {"timing", {{"wall_ms", 0.0}}},
          {"error", nullptr}};
}

void fail(json& report, int code, const std::string& status, const std::string& type, const std::string& message) {
  report["status"] = status;
  report["exit_code"] = code;
  report["error"] = {{"type", type}, {"message", message}, {"line", nullptr}, {"column", nullptr}};
}

std::string render(const json& report, OutputFormat format) {
  return format == OutputFormat::Json ? report.dump(2) + "\n" : render_text(report);
}

void text_value(std::ostringstream& out, const std::string& indent, const std::string& key, const json& v) {
  if (v.is_object() && v.contains("text") && v.contains("kind")) {
    out << indent << key << ": " << v["text"].get<std::string>() << "\n";
  } else if (v.is_object()) {
    out << indent << key << ":\n";
    for (const auto& [k, inner] : v.items()) text_value(out, indent + "  ", k, inner);
  } else if (v.is_array() && !v.empty() && !v.front().is_object()) {
    out << indent << key << ":\n";
    for (const auto& item : v) out << indent << "  " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
  } else if (v.is_array()) {
    out << indent << key << ": " << v.size() << " item(s)\n";
  } else {
    out << indent << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream out;
  out << report["command"]["text"].get<std::string>() << "\n";
  out << "status: " << report["status"].get<std::string>() << " (exit " << report["exit_code"].get<int>() << ")\n";
  if (!report["error"].is_null()) out << "error: " << report["error"]["message"].get<std::string>() << "\n";
  if (!report["input"]["canonical"].is_null()) out << "input: " << report["input"]["canonical"].get<std::string>() << "\n";
  if (report["result"].is_object()) {
    for (const auto& [k, v] : report["result"].items()) {
      if (k == "certificate") {
        out << "certificate: " << v["links"].size() << " link(s) in " << v["ring"]["field"].get<std::string>() << "["
            << v["ring"]["variables"].size() << " variables]\n";
        continue;
      }
      text_value(out, "", k, v);
    }
  }
  if (!report["trace"].empty()) {
    out << "trace:\n";
    for (const auto& t : report["trace"]) {
      out << "  " << t["rule"].get<std::string>() << " " << t["effect"].get<std::string>();
      if (!t["value"].is_null()) out << " " << (t["value"].is_string() ? t["value"].get<std::string>() : t["value"].dump());
      out << " at " << t["node"].get<std::string>() << "\n      " << t["citation"].get<std::string>() << "\n";
    }
  }
  for (const auto& k : report["kernel_checks"]) {
    out << "kernel " << k["method"].get<std::string>() << ": " << k["value"]["text"].get<std::string>() << " at "
        << k["node"].get<std::string>() << (k["consistent"].get<bool>() ? " (consistent)" : " (differs)") << "\n";
  }
  out << "time: " << report["timing"]["wall_ms"].dump() << " ms\n";
  return out.str();
}

namespace {

// Maps the in-flight exception onto status, exit code and error object.
void record_failure(json& report, std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const ParseError& e) {
    fail(report, 1, "usage-error", "ParseError", e.what());
    report["error"]["line"] = e.line();
    report["error"]["column"] = e.column();
  } catch (const UsageError& e) {
    fail(report, 1, "usage-error", "UsageError", e.what());
  } catch (const BudgetExhausted& e) {
    fail(report, 2, "budget-exhausted", "BudgetExhausted", e.what());
  } catch (const InconsistencyError& e) {
    fail(report, 3, "internal-error", "InconsistencyError", e.what());
  } catch (const std::exception& e) {
    fail(report, 3, "internal-error", "InternalError", e.what());
  } catch (...) {
    fail(report, 3, "internal-error", "InternalError", "unknown exception");
  }
}

Outcome finish(const Command& command, json report, std::chrono::steady_clock::time_point start) {
  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  report["timing"]["wall_ms"] = std::round(elapsed.count() * 1000.0) / 1000.0;
  Outcome o;
  o.exit_code = report["exit_code"].get<int>();
  o.rendered = render(report, command.format);
  o.report = std::move(report);
  return o;
}

}  // namespace

Outcome failure_outcome(const Command& command, std::exception_ptr error) {
  const auto start = std::chrono::steady_clock::now();
  auto report = skeleton(command);
  record_failure(report, error);
  return finish(command, std::move(report), start);
}

Outcome run(const Command& command) {
  const auto start = std::chrono::steady_clock::now();
  auto report = skeleton(command);
  try {
    Runner(command, report).run();
  } catch (...) {
    record_failure(report, std::current_exception());
  }
  return finish(command, std::move(report), start);
}

Outcome run_arguments(const std::vector<std::string>& args) {
  Command command;
  try {
    command = parse_command(args);
  } catch (const UsageError& e) {
    // No verb to echo reliably; the raw arguments stand in for the command.
    Outcome o;
    std::string text = "krull";
    for (const auto& a : args) text += " " + shell_quote(a);
    o.report = skeleton(command);
    o.report["command"] = {{"verb", nullptr}, {"argv", args}, {"text", text}};
    o.report["input"] = {{"expression", nullptr}, {"canonical", nullptr}, {"presentation", nullptr}, {"element", nullptr}};
    fail(o.report, 1, "usage-error", "UsageError", e.what());
    o.exit_code = 1;
    o.rendered = render(o.report, OutputFormat::Json);
    return o;
  }
  return run(command);
}

}  // namespace krull
