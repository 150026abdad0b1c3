#include "cli/cli.hpp"

int main(int argc, char** argv) { return concentro::cli::dispatch(argc, argv); }
