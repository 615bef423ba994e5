// Copyright 2026 The qbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qbench/harness/skipfile.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "qbench/error.hpp"
#include "qbench/harness/harness.hpp"

namespace qbench::harness {

namespace fs = std::filesystem;

Skipfile::Skipfile(fs::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::stringstream ss;
  ss << in.rdbuf();
  ids_ = parse(ss.str());
}

std::set<std::string, std::less<>> Skipfile::parse(const std::string& text) {
  std::set<std::string, std::less<>> ids;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream words(line);
    std::string id;
    if (words >> id) ids.insert(id);
  }
  return ids;
}

void Skipfile::add(const std::string& test_id, const std::string& host, double timeout_s) {
  if (!ids_.insert(test_id).second || path_.empty()) return;
  if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
  std::ofstream out(path_, std::ios::app);
  if (!out) throw ConfigError("cannot append to skipfile " + path_.string());
  out << test_id << "  # host=" << host << " timeout=" << timeout_s << "s date=" << utc_timestamp() << '\n';
}

}  // namespace qbench::harness
