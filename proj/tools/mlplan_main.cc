#include <iostream>

#include "mlplan/commands.h"

int main(int argc, char** argv) { return mlplan::RunCli(argc, argv, std::cout, std::cerr); }
