#include "monocert/cli.hpp"

int main(int argc, char** argv) { return monocert::cli::run(argc, argv); }
