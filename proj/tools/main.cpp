#include "cli.hpp"

int main(int argc, char** argv) { return regdil::cli::run(argc, argv); }
