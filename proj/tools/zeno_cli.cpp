// zeno-cli — command-line front end for the Zeno subspace simulator.

#include "zeno/cli.hpp"

int main(int argc, char** argv) { return zeno::cli::main_entry(argc, argv); }
