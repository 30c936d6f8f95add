#include "cli/commands.hpp"

int main(int argc, char** argv) { return stegvault::cli::run(argc, argv); }
