#include "commands.hpp"

int main(int argc, char** argv) { return zeno::cli::run(argc, argv); }
