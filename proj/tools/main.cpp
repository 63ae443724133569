#include "cli.hpp"

int main(int argc, char** argv)
{
    return ddec::cli::run(argc, argv);
}
