#include <iostream>

#include "ruleshell/cli.hpp"

int main(int argc, char ** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return ruleshell::run_cli(args, std::cin, std::cout, std::cerr);
}
