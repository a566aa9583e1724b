#include "ramsey_cli/cli.hpp"

int main(int argc, char** argv) { return ramsey::cli::cli_main(argc, argv); }
