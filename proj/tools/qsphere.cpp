#include <iostream>
#include <string>
#include <vector>

#include "qsphere/cli.hpp"

int main(int argc, char** argv) {
  return qsphere::cli_main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
