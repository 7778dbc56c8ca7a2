#include "cli.hpp"

int main(int argc, char** argv) { return mincorr::cli::main_entry(argc, argv); }
