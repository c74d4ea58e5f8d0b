#include "raman_comb/cli/commands.hpp"

int main(int argc, char** argv) { return raman::cli::cli_main(argc, argv); }
