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

#include "damnets/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "damnets/error.h"

namespace damnets {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw std::invalid_argument(key + ": expected an integer, got '" + v + "'");
  }
  return out;
}

uint64_t to_u64(const std::string& key, const std::string& v) {
  uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw std::invalid_argument(key + ": expected an unsigned integer, got '" + v + "'");
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) {
    throw std::invalid_argument(key + ": expected a number, got '" + v + "'");
  }
  return out;
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

struct Field {
  std::function<void(ModelConfig&, const std::string&)> set;
  std::function<std::string(const ModelConfig&)> get;
};

const std::vector<std::pair<std::string, Field>>& fields() {
#define INT_FIELD(name)                                                         \
  {#name, Field{[](ModelConfig& c, const std::string& v) { c.name = to_int(#name, v); }, \
                [](const ModelConfig& c) { return std::to_string(c.name); }}}
#define DOUBLE_FIELD(name)                                                         \
  {#name, Field{[](ModelConfig& c, const std::string& v) { c.name = to_double(#name, v); }, \
                [](const ModelConfig& c) { return format_double(c.name); }}}
  static const std::vector<std::pair<std::string, Field>> table = {
      INT_FIELD(hidden),
      INT_FIELD(gat_layers),
      INT_FIELD(gat_heads),
      {"gat_activation",
       Field{[](ModelConfig& c, const std::string& v) { c.gat_activation = parse_activation(v); },
             [](const ModelConfig& c) { return to_string(c.gat_activation); }}},
      {"row_model",
       Field{[](ModelConfig& c, const std::string& v) { c.row_model = parse_row_model_kind(v); },
             [](const ModelConfig& c) { return to_string(c.row_model); }}},
      INT_FIELD(row_layers),
      INT_FIELD(age_layers),
      INT_FIELD(age_heads),
      INT_FIELD(age_width),
      DOUBLE_FIELD(lr),
      DOUBLE_FIELD(weight_decay),
      INT_FIELD(batch_size),
      DOUBLE_FIELD(clip_norm),
      DOUBLE_FIELD(val_fraction),
      INT_FIELD(max_epochs),
      INT_FIELD(patience),
      DOUBLE_FIELD(max_train_seconds),
      {"seed", Field{[](ModelConfig& c, const std::string& v) { c.seed = to_u64("seed", v); },
                     [](const ModelConfig& c) { return std::to_string(c.seed); }}},
  };
#undef INT_FIELD
#undef DOUBLE_FIELD
  return table;
}

const Field* find_field(const std::string& key) {
  for (const auto& [name, field] : fields()) {
    if (name == key) return &field;
  }
  return nullptr;
}

}  // namespace

std::string to_string(Activation act) {
  switch (act) {
    case Activation::kTanh:
      return "tanh";
    case Activation::kRelu:
      return "relu";
    case Activation::kIdentity:
      return "identity";
  }
  return "tanh";
}

Activation parse_activation(const std::string& text) {
  if (text == "tanh") return Activation::kTanh;
  if (text == "relu") return Activation::kRelu;
  if (text == "identity") return Activation::kIdentity;
  throw std::invalid_argument("unknown activation '" + text + "' (expected tanh|relu|identity)");
}

void ModelConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid config: ") + what);
  };
  require(hidden > 0 && hidden % 2 == 0, "hidden must be positive and even");
  require(gat_layers >= 1, "gat_layers must be >= 1");
  require(gat_heads >= 1 && hidden % gat_heads == 0, "gat_heads must divide hidden");
  require(row_layers >= 1, "row_layers must be >= 1");
  require(age_layers >= 1, "age_layers must be >= 1");
  require(age_heads >= 1, "age_heads must be >= 1");
  require(age_width >= 0, "age_width must be >= 0");
  require(lr > 0.0, "lr must be > 0");
  require(weight_decay >= 0.0, "weight_decay must be >= 0");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(clip_norm > 0.0, "clip_norm must be > 0");
  require(val_fraction > 0.0 && val_fraction < 1.0, "val_fraction must lie in (0, 1)");
  require(max_epochs >= 1, "max_epochs must be >= 1");
  require(patience >= 1, "patience must be >= 1");
  require(max_train_seconds >= 0.0, "max_train_seconds must be >= 0");
}

std::map<std::string, std::string> ModelConfig::to_map() const {
  std::map<std::string, std::string> out;
  for (const auto& [name, field] : fields()) out[name] = field.get(*this);
  return out;
}

ModelConfig ModelConfig::from_map(const std::map<std::string, std::string>& values) {
  ModelConfig c;
  for (const auto& [key, value] : values) {
    const Field* f = find_field(key);
    if (!f) throw std::invalid_argument("unknown config key '" + key + "'");
    f->set(c, value);
  }
  c.validate();
  return c;
}

ModelConfig parse_config(std::istream& in) {
  ModelConfig c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const Field* f = find_field(key);
    if (!f) throw ParseError("unknown config key '" + key + "'", line_no);
    try {
      f->set(c, value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
  return c;
}

ModelConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  return parse_config(in);
}

std::string format_config(const ModelConfig& config) {
  std::string out;
  for (const auto& [name, field] : fields()) out += name + " = " + field.get(config) + "\n";
  return out;
}

}  // namespace damnets
