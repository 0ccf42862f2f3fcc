#include "bicost/cli.hpp"

int main(int argc, char** argv) { return bicost::io::run_main(argc, argv); }
