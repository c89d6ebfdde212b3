#include "srlx/cli.hpp"

int main(int argc, char** argv) { return srlx::cli::run(argc, argv); }
