#include "qmbound/cli.hpp"

int main(int argc, char ** argv)
{
    return qmbound::cli::run(argc, argv);
}
