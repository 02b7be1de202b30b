#pragma once

#include <cstddef>
#include <exception>
#include <string>
#include <vector>

#include "json.hpp"
#include "krull/chains.hpp"

namespace krull {

enum class Verb { Dim, Gb, Eliminate, Quotient, Saturate, Nzd, Chain, Verify, Trdeg };
std::string to_string(Verb verb);

enum class OutputFormat { Json, Text };

/// One invocation. `expression` holds the ring expression text, or the
/// certificate path for `verify`; `element` the polynomial of
/// quotient/saturate/nzd.
struct Command {
  Verb verb = Verb::Dim;
  std::string expression;
  std::string element;
  std::vector<std::string> keep;
  std::vector<std::string> witnesses;
  std::vector<std::string> fresh;
  /// Each entry is a comma-separated generator list added to the ideal.
  std::vector<std::string> base_primes;
  bool assert_primes = false;
  bool assert_domain = false;
  bool assert_noetherian = false;
  std::string order = "grevlex";
  std::size_t budget = EngineOptions{}.max_pair_reductions;
  std::size_t max_vars = EngineOptions{}.max_variables;
  OutputFormat format = OutputFormat::Json;
  std::string out;

  friend bool operator==(const Command&, const Command&) = default;
};

/// `--help` on any level; carries the help text.
class HelpRequested : public std::exception {
 public:
  explicit HelpRequested(std::string text) : text_(std::move(text)) {}
  const char* what() const noexcept override { return text_.c_str(); }

 private:
  std::string text_;
};

/// Arguments without the program name. Throws UsageError on malformed
/// arguments and HelpRequested on --help.
Command parse_command(const std::vector<std::string>& args);
/// Canonical arguments: parse_command(print_command(c)) == c.
std::vector<std::string> print_command(const Command& command);

inline constexpr const char* report_schema_version = "1.0";

struct Outcome {
  int exit_code = 0;
  nlohmann::json report;
  /// The report rendered in the requested format.
  std::string rendered;
};

/// Exit codes: 0 success, 1 usage or parse error, 2 budget exhausted,
/// 3 internal inconsistency. A report is produced in every case.
Outcome run(const Command& command);
/// The report for `command` when running it threw `error`; the exception
/// type selects the exit code.
Outcome failure_outcome(const Command& command, std::exception_ptr error);
/// Parses then runs; argument errors become exit-1 reports.
Outcome run_arguments(const std::vector<std::string>& args);

std::string render_text(const nlohmann::json& report);

/// Every ideal and polynomial of a certificate lives in one ring, which is
/// stored with the enclosing chain.
nlohmann::json certificate_to_json(const PrimalityCertificate& certificate);
/// Inverse of certificate_to_json; polynomials are read in `ring`.
CertificatePtr certificate_from_json(const nlohmann::json& j, const PolynomialRing& ring);
nlohmann::json chain_to_json(const ChainCertificate& chain);
/// Throws UsageError on malformed input.
ChainCertificate chain_from_json(const nlohmann::json& j);

}  // namespace krull
