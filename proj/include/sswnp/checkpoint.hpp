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

#ifndef SSWNP__CHECKPOINT_HPP_
#define SSWNP__CHECKPOINT_HPP_

#include "sswnp/model.hpp"

#include <iosfwd>
#include <string>

namespace sswnp
{

inline constexpr const char * kCheckpointMagic = "SSWNP-CKPT v1";

/// Text checkpoint:
///
///   SSWNP-CKPT v1
///   <arch key>=<value>          (one per ArchConfig field)
///   tensor <name>
///   shape <rows> <cols>
///   <row values, %.17g, space separated>   (one line per row)
///   ...
///
/// 17 significant digits make the round trip bit-exact.
void write_checkpoint(const ModelParams & params, std::ostream & out);
void save_checkpoint(const ModelParams & params, const std::string & path);

/// Missing "ss.*" tensors are allowed (inference-only checkpoint); any other
/// missing or extra tensor is a ParseError.
ModelParams read_checkpoint(std::istream & in);
ModelParams load_checkpoint(const std::string & path);

}  // namespace sswnp

#endif  // SSWNP__CHECKPOINT_HPP_
