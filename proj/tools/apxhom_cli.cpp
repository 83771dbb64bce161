#include "apxhom/cli.hpp"

int main(int argc, char** argv) { return apxhom::cli::run(argc, argv); }
