#include "geodisk/cli.hpp"

int main(int argc, char** argv) { return geodisk::run_cli(argc, argv); }
