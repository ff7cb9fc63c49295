#include "dirac2d/cli.hpp"

int main(int argc, char** argv) { return dirac2d::cli::run(argc, argv); }
