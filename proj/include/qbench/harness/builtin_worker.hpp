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

#include <iosfwd>

#include "qbench/harness/protocol.hpp"

namespace qbench::harness {

/// Handles one run_test request with the baseline pipeline and returns a
/// result or error message. Artifacts go to the request's scratch_dir.
wire::WireMessage handle_request(const wire::RunTest& request);

/// Worker loop: writes hello, then answers each request line until end of
/// input. Malformed lines get an error reply. Returns the process exit code.
int serve_builtin_worker(std::istream& in, std::ostream& out);

}  // namespace qbench::harness
