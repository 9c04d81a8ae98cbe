// Runs the command-line tool over the invocation corpus.
#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cli {

struct Invocation {
  int expected_exit = 0;
  std::string args;
};

struct Result {
  int exit_code = -1;
  std::string out;
};

inline std::vector<Invocation> load_corpus(const std::string& path) {
  std::ifstream in(path);
  std::vector<Invocation> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream s(line);
    Invocation inv;
    s >> inv.expected_exit;
    std::getline(s >> std::ws, inv.args);
    out.push_back(inv);
  }
  return out;
}

// Standard output only; standard error is discarded.
inline Result run(const std::string& args, const std::string& dir = DTORSION_TEST_DATA) {
  const std::string cmd = "cd '" + dir + "' && '" + std::string(DTORSION_CLI) + "' " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace cli
