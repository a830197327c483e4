#include "ojaregret/harness.hpp"

int main(int argc, char** argv) { return ojaregret::cli_main(argc, argv); }
