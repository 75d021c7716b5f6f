#include <iostream>
#include <string>
#include <vector>

#include "qgrnn/cli.hpp"

int main(int argc, char** argv) {
  return qgrnn::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
