#include <iostream>

#include "chainlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = chainlab::cli::run_command(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.status;
}
