#include <iostream>

#include "slt_app/cli.hpp"

int main(int argc, char** argv) { return slt::app::run_cli(argc, argv, std::cout, std::cerr); }
