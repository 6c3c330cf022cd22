#include <vector>

#include "nel/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nel::cli::run(args);
}
