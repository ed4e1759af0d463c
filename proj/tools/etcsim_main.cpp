#include "etcsim/cli.hpp"

int main(int argc, char** argv) { return etcsim::run_cli(argc, argv); }
