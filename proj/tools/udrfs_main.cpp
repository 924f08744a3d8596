#include "udrfs/harness/commands.hpp"

int main(int argc, char** argv) { return udrfs::harness::run_cli(argc, argv); }
