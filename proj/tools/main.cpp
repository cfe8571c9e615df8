#include <string>
#include <vector>

#include "frap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return frap::cli_dispatch(args);
}
