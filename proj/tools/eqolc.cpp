#include "cli.hpp"

int main(int argc, char** argv) { return eqol::cli_main(argc, argv); }
