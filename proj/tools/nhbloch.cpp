#include <nhbloch/cli.hpp>

int main(int argc, char** argv) { return nhbloch::cli::main(argc, argv); }
