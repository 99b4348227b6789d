#include "kms/cli.hpp"

int main(int argc, char** argv) { return kms::run_cli(argc, argv); }
