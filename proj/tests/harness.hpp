#pragma once
// Helpers for driving the CLI binary and inspecting its output directories.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace harness {

namespace fs = std::filesystem;

struct Outcome {
  int status = -1;
  std::string output;  // stdout and stderr together
};

inline Outcome run_cli(const std::string& args) {
  const std::string cmd = std::string(VCSC_CLI_PATH) + " " + args + " 2>&1";
  Outcome out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.output.append(buf.data(), got);
  const int raw = pclose(pipe);
  out.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// File name -> contents for every regular file directly under `dir`.
inline std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) out[e.path().filename().string()] = slurp(e.path());
  return out;
}

/// Fresh empty directory under the system temp dir.
inline fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("vcsc_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

inline std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace harness
