// Copyright 2026 The sswnp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSWNP__MANIFEST_HPP_
#define SSWNP__MANIFEST_HPP_

#include "sswnp/config.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sswnp
{

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path & path);

/// Writes `<out_dir>/manifest.txt`: a header comment, the command, the
/// effective configuration as key=value lines and one
/// `sha256 <hex>  <relative path>` line per artifact (sorted by path).
/// Contains no timestamps or absolute paths, so identical runs produce
/// identical manifests; it is also a valid config file for replay.
void write_manifest(
  const std::filesystem::path & out_dir, std::string_view command, const KeyValueConfig & config,
  std::vector<std::string> artifacts);

inline constexpr const char * kManifestFile = "manifest.txt";

}  // namespace sswnp

#endif  // SSWNP__MANIFEST_HPP_
