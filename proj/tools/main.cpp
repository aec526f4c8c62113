#include "mtype/cli.hpp"

int main(int argc, char** argv) { return mtype::run_cli(argc, argv); }
