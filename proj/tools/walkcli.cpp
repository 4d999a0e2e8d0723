#include "walkgroup/cli_report.hpp"

int main(int argc, char** argv) { return walkgroup::run_cli(argc, argv); }
