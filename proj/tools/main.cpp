#include <iostream>
#include <string>
#include <vector>

#include "linkoid/cli.hpp"

int main(int argc, char** argv) {
  return linkoid::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
