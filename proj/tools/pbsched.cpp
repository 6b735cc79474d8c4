#include <pbsched/cli/app.hpp>

#include <iostream>

int main(int argc, char** argv) {
    return pbsched::cli::run(argc, argv, std::cout, std::cerr);
}
