#include "arcx/cli.hpp"

int main(int argc, char** argv) { return arcx::cli::run(argc, argv); }
