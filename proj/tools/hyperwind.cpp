#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "hyperwind/cli.hpp"

int main(int argc, char** argv) {
  try {
    return hyperwind::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return 1;
  }
}
