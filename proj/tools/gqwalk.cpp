#include "gqwalk/cli.hpp"

int main(int argc, char** argv) { return gqw::run_cli(argc, argv); }
