#include <iostream>
#include <optional>
#include <string>

#include "moment_atlas_tools/acceptance.hpp"

int main(int argc, char** argv) {
  std::optional<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::stoi(argv[++i]);
    } else {
      std::cerr << "usage: moment_atlas_acceptance [--only N]\n";
      return 64;
    }
  }
  return moment_atlas::acceptance::run_all(std::cout, only) == 0 ? 0 : 1;
}
