#include "nonlocal/cli.hpp"

int main(int argc, char** argv) { return nonlocal::cli::run(argc, argv); }
