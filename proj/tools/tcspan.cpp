#include "tcspan/cli.hpp"

int main(int argc, char** argv) { return tcspan::cli::run(argc, argv); }
