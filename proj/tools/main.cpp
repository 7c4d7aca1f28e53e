#include "cli.hpp"

int main(int argc, char** argv)
{
    return uwofdm::cli::run(argc, argv);
}
