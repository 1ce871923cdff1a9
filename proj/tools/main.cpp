#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  auto parsed = bockstein::cli::parse_args(argc, argv, std::cout, std::cerr);
  if (const int* code = std::get_if<int>(&parsed))
    return *code;
  return bockstein::cli::run(std::get<bockstein::cli::CliConfig>(parsed), std::cout, std::cerr);
}
