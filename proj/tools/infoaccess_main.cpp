#include "infoaccess/cli.hpp"

int main(int argc, char** argv) { return infoaccess::run_cli(argc, argv); }
