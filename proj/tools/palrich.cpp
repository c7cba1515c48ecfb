#include "cli.hpp"

int main(int argc, char** argv) {
  return palrich::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
