#include "diraclab/cli.hpp"

int main(int argc, char** argv) { return diraclab::run_cli(argc, argv); }
