#include "madcdf/cli_io.hpp"

int main(int argc, char** argv) { return madcdf::cli_dispatch(argc, argv); }
