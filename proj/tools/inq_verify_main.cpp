#include "inq/cli.hpp"

int main(int argc, char** argv) { return inq::run_cli(argc, argv); }
