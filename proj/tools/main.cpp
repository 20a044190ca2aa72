#include "ddfrot/cli.hpp"

int main(int argc, char** argv) {
    return ddfrot::cli::run(argc, argv);
}
