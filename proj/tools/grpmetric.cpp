#include "grpmetric/cli.hpp"

int main(int argc, char** argv) { return grpmetric::cli::run(argc, argv); }
