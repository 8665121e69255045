#include "dgelast/cli.hpp"

int main(int argc, char** argv) { return dgelast::cli_main(argc, argv); }
