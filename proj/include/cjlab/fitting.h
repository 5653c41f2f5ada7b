// Copyright 2026 The cjlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CJLAB_FITTING_H
#define CJLAB_FITTING_H

#include <functional>
#include <string>

#include "cjlab/detector.h"
#include "cjlab/distributions.h"
#include "cjlab/model.h"

namespace cjlab {

struct FitOptions {
    /// Use w_m = 1/sigma_m^2 when the stats carry sigma; otherwise w_m = 1.
    bool weighted = true;
    double tolerance = 1e-8;
    int max_iterations = 200;
};

struct FitResult {
    double value = 0.0;
    /// 68% interval from the profile of the objective at delta chi^2 = 1.
    double ci_low = 0.0;
    double ci_high = 0.0;
    /// Weighted sum of squared residuals at the optimum.
    double residual = 0.0;
    int iterations = 0;
    bool weighted = false;
    bool at_boundary = false;
    /// False when the data carry no information on the parameter.
    bool identifiable = true;
};

/// Bounded one-dimensional weighted least squares of C_m^model(x) against `stats`.
FitResult fit_scalar(
    const std::function<CoincidenceStats(double)> &model,
    const CoincidenceStats &stats,
    double lower,
    double upper,
    const FitOptions &options = {});

/// Gain from an SPDC run (both sources blocked), searched on [1, 10].
FitResult fit_gain(const CoincidenceStats &stats, double eta, const FitOptions &options = {});

enum class OverlapMode { kHInput, kVInput };

/// Overlap from a single-source run |~1,0> (kHInput) or |~0,1> (kVInput) at known gain.
FitResult fit_overlap(
    const CoincidenceStats &stats, double eta, double g, OverlapMode mode, const FitOptions &options = {});

struct Prediction {
    PhotonNumberDist dist;
    CoincidenceStats stats;
};

/// Output distribution of `model` and the coincidences it produces on M detectors.
Prediction predict_interference(const ExperimentModel &model, int max_order);

}  // namespace cjlab

#endif
