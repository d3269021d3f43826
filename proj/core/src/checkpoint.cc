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

#include "damnets/checkpoint.h"

#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "damnets/error.h"
#include "json.hpp"

namespace damnets {
namespace {

using Json = nlohmann::ordered_json;

constexpr char kMagic[4] = {'D', 'M', 'N', 'T'};

void put_u32(std::ostream& out, uint32_t x) {
  const unsigned char b[4] = {static_cast<unsigned char>(x), static_cast<unsigned char>(x >> 8),
                              static_cast<unsigned char>(x >> 16),
                              static_cast<unsigned char>(x >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t get_u32(const unsigned char* b) {
  return static_cast<uint32_t>(b[0]) | static_cast<uint32_t>(b[1]) << 8 |
         static_cast<uint32_t>(b[2]) << 16 | static_cast<uint32_t>(b[3]) << 24;
}

void read_exact(std::istream& in, char* dst, std::size_t count, const char* what) {
  in.read(dst, static_cast<std::streamsize>(count));
  if (static_cast<std::size_t>(in.gcount()) != count) {
    throw CheckpointError(std::string("corrupt checkpoint: truncated ") + what);
  }
}

Json meta_to_json(const TrainingMetadata& m) {
  Json j;
  j["best_val_nll"] = m.best_val_nll;
  j["best_epoch"] = m.best_epoch;
  j["epochs_run"] = m.epochs_run;
  j["stop_reason"] = m.stop_reason;
  j["split_seed"] = m.split_seed;
  j["num_train"] = m.num_train;
  j["num_val"] = m.num_val;
  return j;
}

TrainingMetadata meta_from_json(const Json& j) {
  TrainingMetadata m;
  if (j.contains("best_val_nll") && j["best_val_nll"].is_number()) {
    m.best_val_nll = j["best_val_nll"].get<double>();
  } else {
    m.best_val_nll = std::numeric_limits<double>::infinity();
  }
  m.best_epoch = j.value("best_epoch", 0);
  m.epochs_run = j.value("epochs_run", 0);
  m.stop_reason = j.value("stop_reason", std::string());
  m.split_seed = j.value("split_seed", uint64_t{0});
  m.num_train = j.value("num_train", 0);
  m.num_val = j.value("num_val", 0);
  return m;
}

}  // namespace

void write_checkpoint(std::ostream& out, const TransitionModel& model,
                      const TrainingMetadata& meta) {
  Json header;
  header["model_kind"] = model.kind();
  header["n"] = model.n();
  Json config = Json::object();
  for (const auto& [k, v] : model.config().to_map()) config[k] = v;
  header["config"] = std::move(config);
  Json manifest = Json::array();
  std::size_t offset = 0;
  for (const auto& p : model.params().all()) {
    manifest.push_back({{"name", p.name},
                        {"shape", {p.tensor.shape.rows, p.tensor.shape.cols}},
                        {"offset", offset}});
    offset += p.tensor.values.size();
  }
  header["manifest"] = std::move(manifest);
  header["training"] = meta_to_json(meta);
  const std::string text = header.dump();

  out.write(kMagic, 4);
  out.put(static_cast<char>(kCheckpointVersion));
  put_u32(out, static_cast<uint32_t>(text.size()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  std::vector<unsigned char> buffer;
  buffer.reserve(offset * 4);
  for (const auto& p : model.params().all()) {
    for (double x : p.tensor.values) {
      const float f = static_cast<float>(x);
      uint32_t bits = 0;
      std::memcpy(&bits, &f, 4);
      for (int s = 0; s < 32; s += 8) buffer.push_back(static_cast<unsigned char>(bits >> s));
    }
  }
  out.write(reinterpret_cast<const char*>(buffer.data()),
            static_cast<std::streamsize>(buffer.size()));
  if (!out) throw CheckpointError("failed writing checkpoint");
}

Checkpoint read_checkpoint(std::istream& in) {
  char magic[4];
  read_exact(in, magic, 4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw CheckpointError("not a checkpoint: bad magic bytes");
  }
  char version = 0;
  read_exact(in, &version, 1, "version");
  if (static_cast<uint8_t>(version) != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version " +
                          std::to_string(static_cast<uint8_t>(version)));
  }
  unsigned char len_bytes[4];
  read_exact(in, reinterpret_cast<char*>(len_bytes), 4, "header length");
  const uint32_t len = get_u32(len_bytes);
  std::string text(len, '\0');
  read_exact(in, text.data(), len, "header");

  Json header;
  try {
    header = Json::parse(text);
  } catch (const Json::exception& e) {
    throw CheckpointError(std::string("corrupt checkpoint header: ") + e.what());
  }

  Checkpoint ckpt;
  std::map<std::string, std::string> config_map;
  std::string kind;
  int n = 0;
  try {
    kind = header.at("model_kind").get<std::string>();
    n = header.at("n").get<int>();
    for (const auto& [k, v] : header.at("config").items()) config_map[k] = v.get<std::string>();
    ckpt.meta = meta_from_json(header.at("training"));
  } catch (const Json::exception& e) {
    throw CheckpointError(std::string("corrupt checkpoint header: ") + e.what());
  }
  try {
    ckpt.model = make_model(kind, n, ModelConfig::from_map(config_map));
  } catch (const std::invalid_argument& e) {
    throw CheckpointError(std::string("checkpoint describes an invalid model: ") + e.what());
  }

  ad::ParameterStore& store = ckpt.model->params();
  const Json& manifest = header.at("manifest");
  if (!manifest.is_array() || manifest.size() != store.size()) {
    throw CheckpointError("checkpoint manifest lists " + std::to_string(manifest.size()) +
                          " parameters; the architecture has " + std::to_string(store.size()));
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < store.size(); ++i) {
    const auto& entry = manifest[i];
    const auto& p = store[static_cast<ad::ParamId>(i)];
    const std::string name = entry.value("name", std::string());
    const auto shape = entry.value("shape", std::vector<int>{});
    const auto offset = entry.value("offset", std::size_t{0});
    if (name != p.name || shape.size() != 2 || shape[0] != p.tensor.shape.rows ||
        shape[1] != p.tensor.shape.cols || offset != total) {
      throw CheckpointError("checkpoint manifest entry " + std::to_string(i) + " ('" + name +
                            "') does not match parameter '" + p.name + "' " +
                            ad::to_string(p.tensor.shape));
    }
    total += p.tensor.values.size();
  }

  std::vector<unsigned char> data(total * 4);
  read_exact(in, reinterpret_cast<char*>(data.data()), data.size(), "parameter data");
  std::size_t k = 0;
  for (std::size_t i = 0; i < store.size(); ++i) {
    for (double& x : store[static_cast<ad::ParamId>(i)].tensor.values) {
      const uint32_t bits = get_u32(&data[4 * k++]);
      float f;
      std::memcpy(&f, &bits, 4);
      x = static_cast<double>(f);
    }
  }
  return ckpt;
}

void save_checkpoint(const TransitionModel& model, const TrainingMetadata& meta,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("cannot open " + path.string() + " for writing");
  write_checkpoint(out, model, meta);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
  return read_checkpoint(in);
}

}  // namespace damnets
