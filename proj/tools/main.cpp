#include "genipm/cli.hpp"

int main(int argc, char** argv) { return genipm::run_cli(argc, argv); }
