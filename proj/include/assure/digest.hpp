/* Copyright 2026 The Assure Authors
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

#pragma once

#include <string>
#include <string_view>

namespace assure {

/// SHA-256 of `bytes` as 64 lowercase hex characters.
std::string sha256_hex(std::string_view bytes);

bool is_hex_digest(std::string_view s);

/// Reads the whole file; throws Error(IoFailure).
std::string read_file(const std::string& path);

/// Writes `bytes` exactly (binary mode); throws Error(IoFailure).
void write_file(const std::string& path, std::string_view bytes);

}  // namespace assure
