#include "frog/cli.hpp"

int main(int argc, char** argv) { return frog::run(argc, argv); }
