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

#include "qbench/log.hpp"

#include <iostream>
#include <mutex>

namespace qbench::log {
namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

Handler& current_handler() {
  static Handler h = [](const std::string& message) { std::cerr << "warning: " << message << '\n'; };
  return h;
}

}  // namespace

void warn(const std::string& message) {
  Handler h;
  {
    std::lock_guard lock(handler_mutex());
    h = current_handler();
  }
  if (h) h(message);
}

Handler set_warning_handler(Handler handler) {
  std::lock_guard lock(handler_mutex());
  Handler previous = std::move(current_handler());
  current_handler() = std::move(handler);
  return previous;
}

}  // namespace qbench::log
