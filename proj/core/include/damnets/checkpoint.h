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

#ifndef DAMNETS_CHECKPOINT_H_
#define DAMNETS_CHECKPOINT_H_

#include <filesystem>
#include <istream>
#include <memory>
#include <ostream>

#include "damnets/training.h"
#include "damnets/transition_model.h"

namespace damnets {

// Container layout:
//   "DMNT" | version (1 byte) | header length (u32 LE) | JSON header |
//   parameters as f32 LE, in manifest order.
// The header holds model_kind, config, n, the manifest (name, shape,
// offset in floats) and the training metadata.
inline constexpr uint8_t kCheckpointVersion = 1;

struct Checkpoint {
  std::unique_ptr<TransitionModel> model;
  TrainingMetadata meta;
};

void write_checkpoint(std::ostream& out, const TransitionModel& model,
                      const TrainingMetadata& meta);
// Throws CheckpointError on bad magic, unknown version, truncation or a
// manifest that does not match the architecture named in the header.
Checkpoint read_checkpoint(std::istream& in);

void save_checkpoint(const TransitionModel& model, const TrainingMetadata& meta,
                     const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace damnets

#endif  // DAMNETS_CHECKPOINT_H_
