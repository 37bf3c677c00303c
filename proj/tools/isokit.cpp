#include <cstdio>
#include <string>
#include <vector>

#include "commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = isokit::cli::run(args);
  std::fwrite(result.output.data(), 1, result.output.size(), stdout);
  return result.exit_code;
}
