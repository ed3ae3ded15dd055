#include "cli_app.hpp"

int main(int argc, char** argv) { return jgeo::cli::run(argc, argv); }
