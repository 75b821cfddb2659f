#include "gke/cli.hpp"

int main(int argc, char** argv) { return gke::run_cli(argc, argv); }
