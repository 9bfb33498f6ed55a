#include <iostream>

#include "tiltspdc/app/commands.hpp"

int main(int argc, char** argv) { return tiltspdc::app::run_cli(argc, argv, std::cout, std::cerr); }
