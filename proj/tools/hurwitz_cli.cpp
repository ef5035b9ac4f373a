#include "hurwitz/cli.hpp"

int main(int argc, char** argv) { return hurwitz::cli::main_entry(argc, argv); }
