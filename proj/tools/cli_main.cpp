#include "lact_cli.hpp"

int main(int argc, char** argv) { return lact::cli::run_cli(argc, argv); }
