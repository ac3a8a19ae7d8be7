#include "skin/cli.hpp"

int main(int argc, char** argv) { return skin::cli::run(argc, argv); }
