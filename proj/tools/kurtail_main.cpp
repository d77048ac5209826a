#include <iostream>
#include <string>
#include <vector>

#include "kurtail/cli.hpp"

int main(int argc, char** argv) {
  return kurtail::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
