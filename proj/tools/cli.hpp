#ifndef HEUNPC_CLI_HPP
#define HEUNPC_CLI_HPP

int run_cli(int argc, char** argv);

#endif
