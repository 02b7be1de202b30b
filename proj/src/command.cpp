#include <algorithm>
#include <map>

#include "CLI11.hpp"
#include "krull/cli.hpp"
#include "krull/error.hpp"

namespace krull {
namespace {

const std::map<std::string, Verb> verbs{
    {"dim", Verb::Dim},           {"gb", Verb::Gb},   {"eliminate", Verb::Eliminate},
    {"quotient", Verb::Quotient}, {"saturate", Verb::Saturate}, {"nzd", Verb::Nzd},
    {"chain", Verb::Chain},       {"verify", Verb::Verify},     {"trdeg", Verb::Trdeg},
};

const char* verb_help(Verb verb) {
  switch (verb) {
    case Verb::Dim:
      return "Krull dimension of a ring expression, with rule trace";
    case Verb::Gb:
      return "reduced Groebner basis of the presentation ideal";
    case Verb::Eliminate:
      return "intersection of the presentation ideal with K[keep]";
    case Verb::Quotient:
      return "ideal quotient (I : f)";
    case Verb::Saturate:
      return "saturation (I : f^inf)";
    case Verb::Nzd:
      return "whether f is a zero-divisor in the ring";
    case Verb::Chain:
      return "build and verify a witness chain in A[X]";
    case Verb::Verify:
      return "re-verify a chain certificate read from a JSON file";
    case Verb::Trdeg:
      return "transcendence degree of the fraction field of a domain";
  }
  return "";
}

bool takes_element(Verb v) { return v == Verb::Quotient || v == Verb::Saturate || v == Verb::Nzd; }

struct Bindings {
  std::string format = "json";
};

void add_common(CLI::App& sub, Command& c, Bindings& b) {
  sub.add_option("--order", c.order, "monomial order for printed bases")
      ->check(CLI::IsMember({"lex", "grevlex"}));
  sub.add_option("--budget", c.budget, "S-pair reductions per Groebner basis")->check(CLI::PositiveNumber);
  sub.add_option("--max-vars", c.max_vars, "cap on variables plus parameters")->check(CLI::PositiveNumber);
  sub.add_option("--format", b.format, "report format")->check(CLI::IsMember({"json", "text"}));
  sub.add_option("--out", c.out, "write the report to this file");
}

void add_verb(CLI::App& app, Verb verb, const std::string& name, Command& c, Bindings& b) {
  auto* sub = app.add_subcommand(name, verb_help(verb));
  sub->callback([&c, verb] { c.verb = verb; });
  add_common(*sub, c, b);
  if (verb == Verb::Verify) {
    sub->add_option("file", c.expression, "certificate or report JSON")->required();
    return;
  }
  sub->add_option("expression", c.expression, "ring expression")->required();
  if (takes_element(verb)) sub->add_option("element", c.element, "polynomial in the presentation ring")->required();
  switch (verb) {
    case Verb::Dim:
      sub->add_flag("--assert-noetherian", c.assert_noetherian, "treat every node as Noetherian");
      sub->add_flag("--assert-domain", c.assert_domain, "accept Frac without a domain certificate");
      break;
    case Verb::Eliminate:
      sub->add_option("--keep", c.keep, "variables to keep")->required()->delimiter(',')->allow_extra_args(false);
      break;
    case Verb::Chain:
      sub->add_option("--witnesses", c.witnesses, "elements t_1..t_n of A")->required()->delimiter(',')->allow_extra_args(false);
      sub->add_option("--fresh", c.fresh, "names X_1..X_n")->delimiter(',')->allow_extra_args(false);
      sub->add_option("--base-prime", c.base_primes, "generators added for one base prime (repeatable)")
          ->allow_extra_args(false);
      sub->add_flag("--assert-primes", c.assert_primes, "accept base primes without a certificate");
      break;
    case Verb::Trdeg:
      sub->add_flag("--assert-domain", c.assert_domain, "accept the ring as a domain without a certificate");
      break;
    default:
      break;
  }
}

void reject_empty(const std::vector<std::string>& items, const std::string& option) {
  if (std::any_of(items.begin(), items.end(), [](const auto& s) { return s.empty(); })) {
    throw UsageError("empty value for " + option);
  }
}

}  // namespace

std::string to_string(Verb verb) {
  for (const auto& [name, v] : verbs) {
    if (v == verb) return name;
  }
  return "";
}

Command parse_command(const std::vector<std::string>& args) {
  Command c;
  Bindings b;
  CLI::App app{"Exact Krull dimensions of rings built from fields, polynomials, quotients, localizations and tensor products",
               "krull"};
  app.require_subcommand(1, 1);
  for (const auto& [name, verb] : verbs) add_verb(app, verb, name, c, b);

  if (!args.empty() && !args.front().starts_with("-") && !verbs.count(args.front())) {
    throw UsageError("unknown verb '" + args.front() + "'");
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    for (const auto* sub : app.get_subcommands({})) {
      if (sub->count() > 0) throw HelpRequested(sub->help());
    }
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  c.format = b.format == "text" ? OutputFormat::Text : OutputFormat::Json;
  if (c.expression.empty()) throw UsageError("empty expression");
  if (takes_element(c.verb) && c.element.empty()) throw UsageError("empty element");
  reject_empty(c.keep, "--keep");
  reject_empty(c.witnesses, "--witnesses");
  reject_empty(c.fresh, "--fresh");
  reject_empty(c.base_primes, "--base-prime");
  if (!c.fresh.empty() && c.fresh.size() != c.witnesses.size()) {
    throw UsageError("--fresh needs one name per witness");
  }
  return c;
}

std::vector<std::string> print_command(const Command& c) {
  const Command defaults;
  std::vector<std::string> out{to_string(c.verb)};
  const auto opt = [&](const std::string& name, const std::string& value) { out.push_back("--" + name + "=" + value); };
  for (const auto& k : c.keep) opt("keep", k);
  for (const auto& w : c.witnesses) opt("witnesses", w);
  for (const auto& f : c.fresh) opt("fresh", f);
  for (const auto& p : c.base_primes) opt("base-prime", p);
  if (c.assert_primes) out.push_back("--assert-primes");
  if (c.assert_domain) out.push_back("--assert-domain");
  if (c.assert_noetherian) out.push_back("--assert-noetherian");
  if (c.order != defaults.order) opt("order", c.order);
  if (c.budget != defaults.budget) opt("budget", std::to_string(c.budget));
  if (c.max_vars != defaults.max_vars) opt("max-vars", std::to_string(c.max_vars));
  if (c.format != defaults.format) opt("format", "text");
  if (!c.out.empty()) opt("out", c.out);
  std::vector<std::string> positional{c.expression};
  if (takes_element(c.verb)) positional.push_back(c.element);
  if (std::any_of(positional.begin(), positional.end(), [](const auto& s) { return s.starts_with("-"); })) {
    out.push_back("--");
  }
  out.insert(out.end(), positional.begin(), positional.end());
  return out;
}

}  // namespace krull
