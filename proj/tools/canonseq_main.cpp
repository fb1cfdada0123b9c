#include "canonseq/cli.hpp"

int main(int argc, char** argv) { return canonseq::cli::run(argc, argv); }
