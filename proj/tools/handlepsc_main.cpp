#include <iostream>

#include "handlepsc/cli.hpp"

int main(int argc, char** argv) {
  return handlepsc::run_cli(argc, argv, std::cout, std::cerr);
}
