#include "wfi/cli.hpp"

int main(int argc, char** argv) { return wfi::cli::parse_and_dispatch(argc, argv); }
