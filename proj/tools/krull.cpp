#include <fstream>
#include <iostream>

#include "krull/cli.hpp"
#include "krull/error.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  krull::Outcome outcome;
  std::string out_path;
  try {
    const auto command = krull::parse_command(args);
    out_path = command.out;
    outcome = krull::run(command);
  } catch (const krull::HelpRequested& help) {
    std::cout << help.what();
    return 0;
  } catch (const krull::UsageError&) {
    outcome = krull::run_arguments(args);
  }
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (file << outcome.rendered) return outcome.exit_code;
    std::cerr << "krull: cannot write " << out_path << "\n";
    std::cout << outcome.rendered;
    return outcome.exit_code == 0 ? 1 : outcome.exit_code;
  }
  std::cout << outcome.rendered;
  return outcome.exit_code;
}
