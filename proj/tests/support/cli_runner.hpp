#pragma once

// Helpers for driving the installed CLI binary end-to-end.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace clirun {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

class TempDir {
 public:
  TempDir() {
    base_ = fs::temp_directory_path() /
            ("dcs_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(base_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(base_, ec);
  }
  fs::path path(const std::string& name) const { return base_ / name; }
  fs::path write(const std::string& name, const std::string& content) const {
    auto p = path(name);
    std::ofstream out(p);
    out << content;
    return p;
  }

 private:
  fs::path base_;
  static inline int counter_ = 0;
};

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// argv_tail is everything after the program name; stdout/stderr are captured.
inline RunResult run_cli(const TempDir& dir, const std::string& argv_tail) {
  auto out = dir.path("stdout.txt");
  auto err = dir.path("stderr.txt");
  std::string cmd = std::string(DCS_CLI_PATH) + " " + argv_tail + " > " + out.string() +
                    " 2> " + err.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace clirun
