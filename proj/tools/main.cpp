#include "quivdc_cli.hpp"

int main(int argc, char** argv)
{
    return quivdc::cli::run(argc, argv, std::cout, std::cerr);
}
