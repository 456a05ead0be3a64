// CLI front end; subcommands are wired up in cli.hpp.
#include "planefol/cli.hpp"

int main(int argc, char** argv) { return planefol::cli_main(argc, argv); }
