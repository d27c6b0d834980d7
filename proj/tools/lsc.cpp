#include "lsc/cli.hpp"

int main(int argc, char** argv) { return lsc::cli::run(argc, argv); }
