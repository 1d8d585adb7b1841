#include "medest/cli.hpp"

int main(int argc, char** argv) { return medest::run_cli(argc, argv); }
