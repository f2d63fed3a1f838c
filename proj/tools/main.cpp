#include <cstdio>
#include <string>
#include <vector>

#include "sl2lab/cli_support.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  sl2lab::CommandResult res = sl2lab::run_command(args);
  if (!res.output.empty()) std::fputs(res.output.c_str(), stdout);
  if (!res.note.empty()) std::fprintf(stderr, "%s\n", res.note.c_str());
  return res.exit_code;
}
