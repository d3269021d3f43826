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

#include "damnets/dataset_io.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "damnets/error.h"
#include "json.hpp"

namespace damnets {
namespace {

using Json = nlohmann::ordered_json;

NetworkTimeSeries parse_line(const std::string& line, std::size_t line_no) {
  Json doc;
  try {
    doc = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
  }
  if (!doc.is_object()) throw ParseError("record is not an object", line_no);
  for (const char* key : {"id", "n", "graphs"}) {
    if (!doc.contains(key)) {
      throw ParseError(std::string("missing field \"") + key + "\"", line_no);
    }
  }
  if (!doc["id"].is_string()) throw ParseError("\"id\" must be a string", line_no);
  if (!doc["n"].is_number_integer() || doc["n"].get<int64_t>() < 0) {
    throw ParseError("\"n\" must be a non-negative integer", line_no);
  }
  if (!doc["graphs"].is_array()) {
    throw ParseError("\"graphs\" must be an array", line_no);
  }

  NetworkTimeSeries series;
  series.id = doc["id"].get<std::string>();
  series.n = doc["n"].get<int>();
  const auto& graphs = doc["graphs"];
  series.graphs.reserve(graphs.size());
  for (std::size_t t = 0; t < graphs.size(); ++t) {
    const auto& edge_list = graphs[t];
    if (!edge_list.is_array()) {
      throw ParseError("graph " + std::to_string(t) + " is not an edge list",
                       line_no);
    }
    std::vector<Edge> edges;
    edges.reserve(edge_list.size());
    for (const auto& pair : edge_list) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
          !pair[1].is_number_integer()) {
        throw ParseError("graph " + std::to_string(t) +
                             ": edge must be a pair of integers",
                         line_no);
      }
      int64_t i = pair[0].get<int64_t>();
      int64_t j = pair[1].get<int64_t>();
      if (i < 0 || j < 0 || i >= series.n || j >= series.n) {
        throw ParseError("graph " + std::to_string(t) + ": node index out of range [0, " +
                             std::to_string(series.n) + ") in edge [" +
                             std::to_string(i) + "," + std::to_string(j) + "]",
                         line_no);
      }
      edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
    }
    series.graphs.push_back(Graph::unchecked(series.n, std::move(edges)));
  }
  if (auto diags = validate_nts(series); !diags.empty()) {
    throw ParseError(diags.front().message, line_no);
  }
  return series;
}

}  // namespace

std::string series_to_json_line(const NetworkTimeSeries& series) {
  Json doc;
  doc["id"] = series.id;
  doc["n"] = series.n;
  Json graphs = Json::array();
  for (const Graph& g : series.graphs) {
    Json edges = Json::array();
    for (const Edge& e : g.edges()) edges.push_back(Json::array({e.u, e.v}));
    graphs.push_back(std::move(edges));
  }
  doc["graphs"] = std::move(graphs);
  return doc.dump();
}

void write_nts(std::ostream& out, const std::vector<NetworkTimeSeries>& series) {
  for (const auto& s : series) out << series_to_json_line(s) << '\n';
}

std::vector<NetworkTimeSeries> read_nts(std::istream& in) {
  std::vector<NetworkTimeSeries> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_line(line, line_no));
  }
  return out;
}

void save_nts(const std::vector<NetworkTimeSeries>& series,
              const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_nts(out, series);
  if (!out) throw Error("failed writing " + path.string());
}

std::vector<NetworkTimeSeries> load_nts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_nts(in);
}

}  // namespace damnets
