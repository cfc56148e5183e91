// Command-line driver for HDG Poisson convergence studies.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "hdg/study.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    bool wants_help = false;
    const hdg::StudyConfig cfg = hdg::parse_config(args, &wants_help);
    if (wants_help) return 0;
    return hdg::run_study(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
