#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "lapkit/driver.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lapkit::run(args, std::filesystem::current_path(), std::cout, std::cerr);
}
