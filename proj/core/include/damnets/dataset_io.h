// Copyright 2026 The DAMNETS Authors
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

#ifndef DAMNETS_DATASET_IO_H_
#define DAMNETS_DATASET_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "damnets/graph.h"

namespace damnets {

// JSON Lines dataset, one series per line:
//   {"id": "<string>", "n": <int>, "graphs": [[[i,j],...], ...]}
// Nodes are 0-indexed; edges are written with i < j, graphs in time order.
// Blank lines are skipped on load. Errors are ParseError with a 1-based line.

void write_nts(std::ostream& out, const std::vector<NetworkTimeSeries>& series);
std::vector<NetworkTimeSeries> read_nts(std::istream& in);

void save_nts(const std::vector<NetworkTimeSeries>& series,
              const std::filesystem::path& path);
std::vector<NetworkTimeSeries> load_nts(const std::filesystem::path& path);

std::string series_to_json_line(const NetworkTimeSeries& series);

}  // namespace damnets

#endif  // DAMNETS_DATASET_IO_H_
