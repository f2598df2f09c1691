#include "descent0/cli.hpp"

#include <cstdio>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto result = descent0::cli::run(args);
  std::fwrite(result.output.data(), 1, result.output.size(), stdout);
  return result.exit_code();
}
