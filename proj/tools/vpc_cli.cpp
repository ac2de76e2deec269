#include "vpc/cli.hpp"
int main(int argc, char** argv) { return vpc::cli_main(argc, argv); }
