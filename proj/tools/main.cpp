#include "commands.hpp"

int main(int argc, char** argv) { return epl::cli::main_entry(argc, argv); }
