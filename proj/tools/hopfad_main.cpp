#include "hopfad/cli.hpp"

int main(int argc, char** argv) { return hopfad::cli_main(argc, argv); }
