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

#ifndef DAMNETS_CONFIG_H_
#define DAMNETS_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>

#include "damnets/layers.h"
#include "damnets/row_autoregressor.h"

namespace damnets {

// Hyperparameters of both model kinds and of training. Keys of the config
// file are the field names below.
struct ModelConfig {
  // DAMNETS
  int hidden = 32;
  int gat_layers = 1;
  int gat_heads = 1;
  Activation gat_activation = Activation::kTanh;
  RowModelKind row_model = RowModelKind::kTransformer;
  int row_layers = 3;
  // AGE-D; age_width = 0 means min(n, 128).
  int age_layers = 2;
  int age_heads = 4;
  int age_width = 0;
  // Optimisation
  double lr = 1e-3;
  double weight_decay = 5e-4;
  int batch_size = 32;
  double clip_norm = 5.0;
  double val_fraction = 0.3;
  int max_epochs = 1000;
  int patience = 10;
  double max_train_seconds = 0.0;  // 0 disables the wall-clock cap
  uint64_t seed = 0;

  // Throws std::invalid_argument naming the first bad field.
  void validate() const;
  std::map<std::string, std::string> to_map() const;
  static ModelConfig from_map(const std::map<std::string, std::string>& values);
};

// Plain "key = value" lines; '#' starts a comment. Unknown keys and
// malformed values raise ParseError with the line number.
ModelConfig parse_config(std::istream& in);
ModelConfig load_config(const std::filesystem::path& path);
std::string format_config(const ModelConfig& config);

std::string to_string(Activation act);
Activation parse_activation(const std::string& text);

}  // namespace damnets

#endif  // DAMNETS_CONFIG_H_
