#include "nlsf/cli.hpp"

int main(int argc, char** argv) { return nlsf::command_dispatch(argc, argv); }
