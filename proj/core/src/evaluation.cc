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

#include "damnets/evaluation.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "damnets/error.h"
#include "json.hpp"

namespace damnets {

using Json = nlohmann::ordered_json;

double distance(const std::vector<double>& a, const std::vector<double>& b, Metric metric) {
  const std::size_t len = std::max(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double d = (i < a.size() ? a[i] : 0.0) - (i < b.size() ? b[i] : 0.0);
    acc += metric == Metric::kTotalVariation ? std::abs(d) : d * d;
  }
  return metric == Metric::kTotalVariation ? 0.5 * acc : std::sqrt(acc);
}

double gaussian_kernel(const std::vector<double>& a, const std::vector<double>& b,
                       Metric metric, double sigma) {
  const double d = distance(a, b, metric);
  return std::exp(-d * d / (2.0 * sigma * sigma));
}

double mmd2(const std::vector<std::vector<double>>& x, const std::vector<std::vector<double>>& y,
            Metric metric, double sigma) {
  if (x.empty() || y.empty()) throw std::invalid_argument("mmd2: empty sample set");
  auto mean_kernel = [&](const auto& p, const auto& q) {
    double s = 0.0;
    for (const auto& a : p) {
      for (const auto& b : q) s += gaussian_kernel(a, b, metric, sigma);
    }
    return s / (static_cast<double>(p.size()) * static_cast<double>(q.size()));
  };
  const double v = mean_kernel(x, x) + mean_kernel(y, y) - 2.0 * mean_kernel(x, y);
  return std::max(v, 0.0);
}

Metric metric_for(StatisticId id) {
  return is_histogram(id) ? Metric::kTotalVariation : Metric::kEuclidean;
}

namespace {

std::size_t common_length(const std::vector<NetworkTimeSeries>& a,
                          const std::vector<NetworkTimeSeries>& b, bool* truncated) {
  if (a.empty() || b.empty()) throw std::invalid_argument("evaluation: empty series set");
  std::size_t lo = a.front().graphs.size(), hi = lo;
  for (const auto* set : {&a, &b}) {
    for (const auto& s : *set) {
      lo = std::min(lo, s.graphs.size());
      hi = std::max(hi, s.graphs.size());
    }
  }
  if (lo == 0) throw std::invalid_argument("evaluation: a series has no graphs");
  if (truncated) *truncated = lo != hi;
  return lo;
}

// values[s][t] for every series s and t < len.
std::vector<std::vector<std::vector<double>>> stat_values(
    const std::vector<NetworkTimeSeries>& set, std::size_t len, StatisticId id) {
  std::vector<std::vector<std::vector<double>>> out(len);
  for (std::size_t t = 0; t < len; ++t) {
    out[t].reserve(set.size());
    for (const auto& s : set) out[t].push_back(statistic_value(s.graphs[t], id));
  }
  return out;
}

MmdSeries mmd_from_values(const std::vector<std::vector<std::vector<double>>>& test,
                          const std::vector<std::vector<std::vector<double>>>& samples,
                          StatisticId id, double sigma) {
  MmdSeries out;
  for (std::size_t t = 0; t < test.size(); ++t) {
    out.per_t.push_back(mmd2(test[t], samples[t], metric_for(id), sigma));
    out.total += out.per_t.back();
  }
  return out;
}

Curve curve_of(const std::vector<NetworkTimeSeries>& set, std::size_t len, StatisticId id) {
  Curve c;
  for (std::size_t t = 0; t < len; ++t) {
    double s = 0.0, ss = 0.0;
    for (const auto& series : set) {
      const double v = curve_summary(series.graphs[t], id);
      s += v;
      ss += v * v;
    }
    const double n = static_cast<double>(set.size());
    const double mean = s / n;
    c.mean.push_back(mean);
    c.std.push_back(std::sqrt(std::max(0.0, ss / n - mean * mean)));
  }
  return c;
}

std::vector<double> mean_histogram(const std::vector<std::vector<double>>& hists) {
  std::size_t len = 0;
  for (const auto& h : hists) len = std::max(len, h.size());
  std::vector<double> out(len, 0.0);
  for (const auto& h : hists) {
    for (std::size_t i = 0; i < h.size(); ++i) out[i] += h[i];
  }
  for (double& x : out) x /= static_cast<double>(hists.size());
  return out;
}

std::string format_double(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

MmdSeries mmd_bar(const std::vector<NetworkTimeSeries>& test,
                  const std::vector<NetworkTimeSeries>& samples, StatisticId id, double sigma) {
  bool truncated = false;
  const std::size_t len = common_length(test, samples, &truncated);
  MmdSeries out =
      mmd_from_values(stat_values(test, len, id), stat_values(samples, len, id), id, sigma);
  out.truncated = truncated;
  return out;
}

const StatReport* EvalReport::find(StatisticId id) const {
  for (const auto& s : stats) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

EvalReport build_report(const std::vector<NetworkTimeSeries>& test,
                        const std::vector<NetworkTimeSeries>& samples,
                        const std::vector<StatisticId>& stats, double sigma) {
  bool truncated = false;
  const std::size_t len = common_length(test, samples, &truncated);
  EvalReport report;
  report.meta["num_test_series"] = std::to_string(test.size());
  report.meta["num_sample_series"] = std::to_string(samples.size());
  report.meta["timesteps"] = std::to_string(len);
  report.meta["truncated"] = truncated ? "true" : "false";
  report.meta["kernel"] = "gaussian";
  report.meta["sigma"] = format_double(sigma);
  report.meta["estimator"] = "biased V-statistic, MMD^2 clipped at 0";
  report.meta["histogram_metric"] = "total variation";
  report.meta["scalar_metric"] = "absolute difference";
  report.meta["bins"] = "degree: 0..n-1; clustering: 100 on [0,1]; spectral: 200 on [0,2]";
  report.meta["assortativity_undefined"] = "0";
  report.meta["closeness"] = "per-component normalisation, isolated nodes 0, mean over nodes";
  report.meta["test_first_id"] = test.front().id;
  report.meta["sample_first_id"] = samples.front().id;

  for (StatisticId id : stats) {
    const auto tv = stat_values(test, len, id);
    const auto sv = stat_values(samples, len, id);
    const MmdSeries m = mmd_from_values(tv, sv, id, sigma);
    StatReport r;
    r.id = id;
    r.mmd_t = m.per_t;
    r.mmd_bar = m.total;
    r.test_curve = curve_of(test, len, id);
    r.sample_curve = curve_of(samples, len, id);
    if (id == StatisticId::kDegree) {
      r.test_final_hist = mean_histogram(tv.back());
      r.sample_final_hist = mean_histogram(sv.back());
    }
    report.stats.push_back(std::move(r));
  }
  return report;
}

std::string report_to_json(const EvalReport& report) {
  Json doc;
  Json meta = Json::object();
  for (const auto& [k, v] : report.meta) meta[k] = v;
  doc["meta"] = std::move(meta);
  Json per_stat = Json::object();
  for (const auto& s : report.stats) {
    Json j;
    j["mmd_t"] = s.mmd_t;
    j["mmd_bar"] = s.mmd_bar;
    j["test_curve"] = {{"mean", s.test_curve.mean}, {"std", s.test_curve.std}};
    j["sample_curve"] = {{"mean", s.sample_curve.mean}, {"std", s.sample_curve.std}};
    if (s.id == StatisticId::kDegree) {
      j["test_final_hist"] = s.test_final_hist;
      j["sample_final_hist"] = s.sample_final_hist;
    }
    per_stat[to_string(s.id)] = std::move(j);
  }
  doc["per_stat"] = std::move(per_stat);
  return doc.dump(2);
}

EvalReport report_from_json(const std::string& text) {
  EvalReport report;
  try {
    const Json doc = Json::parse(text);
    for (const auto& [k, v] : doc.at("meta").items()) report.meta[k] = v.get<std::string>();
    for (const auto& [name, j] : doc.at("per_stat").items()) {
      StatReport s;
      s.id = parse_statistic(name);
      s.mmd_t = j.at("mmd_t").get<std::vector<double>>();
      s.mmd_bar = j.at("mmd_bar").get<double>();
      s.test_curve.mean = j.at("test_curve").at("mean").get<std::vector<double>>();
      s.test_curve.std = j.at("test_curve").at("std").get<std::vector<double>>();
      s.sample_curve.mean = j.at("sample_curve").at("mean").get<std::vector<double>>();
      s.sample_curve.std = j.at("sample_curve").at("std").get<std::vector<double>>();
      if (j.contains("test_final_hist")) {
        s.test_final_hist = j.at("test_final_hist").get<std::vector<double>>();
        s.sample_final_hist = j.at("sample_final_hist").get<std::vector<double>>();
      }
      report.stats.push_back(std::move(s));
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what(), 0);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed report: ") + e.what(), 0);
  }
  return report;
}

}  // namespace damnets
