// pfdamp_main.cpp: command-line tool

#include <iostream>

#include "pfdamp/cli.hpp"

int main(int argc, char** argv) { return pfdamp::cli_main(argc, argv, std::cout, std::cerr); }
