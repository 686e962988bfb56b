#include <iostream>
#include <string>
#include <vector>

#include "ifnet/cli.hpp"

int main(int argc, char** argv) {
  return ifnet::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
