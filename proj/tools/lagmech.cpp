#include <iostream>

#include "lagmech/cli/app.hpp"

int main(int argc, char** argv) {
  const auto res = lagmech::cli::run(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << res.out;
  std::cerr << res.err;
  return res.code;
}
