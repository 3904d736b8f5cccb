// Copyright 2026 The TIC Authors.
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

// Data files compiled into the library (domain packs, prompt assets).

#ifndef TIC_RESOURCES_HPP_
#define TIC_RESOURCES_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tic {

// `path` is relative to the data directory, e.g. "packs/barman/rules.lp".
std::optional<std::string_view> embedded_file(std::string_view path);

// All embedded paths starting with `prefix`, sorted.
std::vector<std::string> embedded_paths(std::string_view prefix = {});

}  // namespace tic

#endif  // TIC_RESOURCES_HPP_
