#include "qharm/cli.hpp"

int main(int argc, char** argv) { return qharm::cli::run(argc, argv); }
