// Runs every acceptance case and prints one pass/fail line per criterion.

#include <iostream>
#include <string>
#include <vector>

#include "lambek/repro.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> only(argv + 1, argv + argc);
  return lambek::run_repro(only, std::cout, false);
}
