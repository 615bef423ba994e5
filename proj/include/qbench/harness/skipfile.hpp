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

#pragma once

#include <filesystem>
#include <set>
#include <string>

namespace qbench::harness {

/// Machine-local list of test ids never to run. One id per line, optionally
/// followed by a `#` comment. Entries stay until removed by hand.
class Skipfile {
 public:
  Skipfile() = default;
  /// A missing file is an empty skipfile.
  explicit Skipfile(std::filesystem::path path);

  const std::filesystem::path& path() const noexcept { return path_; }
  bool contains(const std::string& test_id) const { return ids_.count(test_id) != 0; }
  const std::set<std::string, std::less<>>& ids() const noexcept { return ids_; }

  /// Records the id and appends `id  # host=... timeout=...s date=...` to the file.
  void add(const std::string& test_id, const std::string& host, double timeout_s);

  /// Parses skipfile text into ids.
  static std::set<std::string, std::less<>> parse(const std::string& text);

 private:
  std::filesystem::path path_;
  std::set<std::string, std::less<>> ids_;
};

}  // namespace qbench::harness
