#include <vector>
#include <string>

#include "cogeom/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cogeom::cli::run(args);
}
