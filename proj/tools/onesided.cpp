#include "onesided/cli.hpp"

int main(int argc, char** argv) { return onesided::cli::run(argc, argv); }
