#include "poolopt/bench.hpp"

int main(int argc, char** argv) { return poolopt::cli_main(argc, argv); }
