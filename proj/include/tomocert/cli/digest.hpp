// Copyright 2026 The tomocert Authors
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

#include <cstdint>
#include <string>
#include <string_view>

namespace tomocert::cli {

/// 64-bit FNV-1a of a byte string.
std::uint64_t fnv1a64(std::string_view bytes);

/// "fnv1a64:" followed by 16 hex digits.
std::string digest_string(std::string_view bytes);

/// Reads a whole file; throws std::runtime_error naming the path on failure.
std::string read_file(const std::string &path);

/// digest_string of the file's contents.
std::string file_digest(const std::string &path);

}  // namespace tomocert::cli
