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

#ifndef DAMNETS_EVALUATION_H_
#define DAMNETS_EVALUATION_H_

#include <map>
#include <string>
#include <vector>

#include "damnets/graph.h"
#include "damnets/statistics.h"

namespace damnets {

enum class Metric {
  kTotalVariation,  // 0.5 * sum |a - b|, shorter vector padded with zeros
  kEuclidean,
};

double distance(const std::vector<double>& a, const std::vector<double>& b, Metric metric);
// exp(-d(a, b)^2 / (2 sigma^2)).
double gaussian_kernel(const std::vector<double>& a, const std::vector<double>& b,
                       Metric metric, double sigma);

// Biased (V-statistic) estimate of MMD^2, clipped at 0. Throws
// std::invalid_argument when either set is empty.
double mmd2(const std::vector<std::vector<double>>& x, const std::vector<std::vector<double>>& y,
            Metric metric, double sigma = 1.0);

Metric metric_for(StatisticId id);

struct MmdSeries {
  std::vector<double> per_t;  // MMD^2 at t = 0 .. T-1
  double total = 0.0;         // sum of per_t
  bool truncated = false;     // the sets had different lengths
};

// Per-timestep MMD^2 between the populations {G_t} of both sets, summed
// over the common time range.
MmdSeries mmd_bar(const std::vector<NetworkTimeSeries>& test,
                  const std::vector<NetworkTimeSeries>& samples, StatisticId id,
                  double sigma = 1.0);

struct Curve {
  std::vector<double> mean;
  std::vector<double> std;  // population standard deviation
};

struct StatReport {
  StatisticId id = StatisticId::kDegree;
  std::vector<double> mmd_t;
  double mmd_bar = 0.0;
  Curve test_curve;
  Curve sample_curve;
  // Degree only: mean degree histograms at the last common timestep.
  std::vector<double> test_final_hist;
  std::vector<double> sample_final_hist;
};

struct EvalReport {
  std::map<std::string, std::string> meta;
  std::vector<StatReport> stats;

  const StatReport* find(StatisticId id) const;
};

EvalReport build_report(const std::vector<NetworkTimeSeries>& test,
                        const std::vector<NetworkTimeSeries>& samples,
                        const std::vector<StatisticId>& stats, double sigma = 1.0);

// {meta, per_stat: {<name>: {mmd_t, mmd_bar, test_curve: {mean, std},
// sample_curve: {mean, std}, [test_final_hist, sample_final_hist]}}}
std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);

}  // namespace damnets

#endif  // DAMNETS_EVALUATION_H_
