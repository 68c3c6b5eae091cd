/*
 * Copyright 2026 The proxysim Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PROXYSIM_CLI_HPP
#define PROXYSIM_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace proxysim {

// Runs the command line `args` (args[0] is the program name). Returns the
// process exit code; normal output goes to `out`, diagnostics to `err`.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

// Reads a flat `key=value` config file. Blank lines and lines starting with
// '#' are skipped. Throws std::runtime_error naming the offending line.
std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::filesystem::path& path);

// Files staged in memory and published together: every file is written to a
// sibling temporary first, then all are renamed into place. If anything
// fails, files already published by this commit and all temporaries are
// removed.
class OutputSet {
 public:
  void add(std::filesystem::path path, std::string contents);
  // Creates parent directories as needed. Throws std::runtime_error.
  void commit();
  const std::vector<std::filesystem::path>& paths() const { return paths_; }

 private:
  std::vector<std::filesystem::path> paths_;
  std::vector<std::string> contents_;
};

}  // namespace proxysim

#endif  // PROXYSIM_CLI_HPP
