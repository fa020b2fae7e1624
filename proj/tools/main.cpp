#include "gcdmd/cli.hpp"

int main(int argc, char** argv) { return gcdmd::run_cli(argc, argv); }
