#include "fsoturb/cli.hpp"

int main(int argc, char** argv) { return fsoturb::cli::run(argc, argv); }
