#include "commring_cli/cli.hpp"

int main(int argc, char** argv) { return commring::cli::run({argv + 1, argv + argc}); }
