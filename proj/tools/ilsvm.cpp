#include "ilsvm/cli.hpp"

int main(int argc, char** argv) { return ilsvm::cli::main(argc, argv); }
