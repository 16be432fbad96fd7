#include "eqh/cli.hpp"

int main(int argc, char** argv) { return eqh::cli_main(argc, argv); }
