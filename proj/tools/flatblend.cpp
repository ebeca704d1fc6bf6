/**
 * @file flatblend.cpp
 * @brief Entry point of the flatblend command-line tool.
 */

#include "flatblend/cli.hpp"

int main(int argc, char** argv) { return flatblend::cli::run(argc, argv); }
