#include "epsball/cli.hpp"

int main(int argc, char** argv) { return epsball::run_cli(argc, argv); }
