#include "jacobi/cli.hpp"

int main(int argc, char** argv) { return jacobi::cli::main(argc, argv); }
