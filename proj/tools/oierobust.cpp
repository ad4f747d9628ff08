#include "oierobust/cli.hpp"

int main(int argc, char** argv) { return oierobust::run_cli(argc, argv); }
