#include <iostream>
#include <string>
#include <vector>

#include "fr1tass_cli.hpp"

int main(int argc, char** argv) {
	std::vector<std::string> args(argv + 1, argv + argc);
	return fr1tass::cli::run(std::move(args), std::cout, std::cerr);
}
