#include <iostream>
#include <string>
#include <vector>

#include "maxcover/io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mkc::run_command(args, std::cout, std::cerr);
}
