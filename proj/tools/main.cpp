#include "commands.hpp"

int main(int argc, char** argv) { return bhg::cli::run(argc, argv); }
