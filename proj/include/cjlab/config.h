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

#ifndef CJLAB_CONFIG_H
#define CJLAB_CONFIG_H

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cjlab/detector.h"
#include "cjlab/model.h"
#include "cjlab/spectral.h"
#include "cjlab/wigner.h"

namespace cjlab {

/// Every configurable field with its default value.
nlohmann::json default_config();

/// Defaults, overlaid by the file (if any), overlaid by `overrides`.
///
/// Overrides are (dotted path, text) pairs; the text is converted to the type of
/// the default at that path. A file holding a report is accepted: its embedded
/// "config" object is used. Unknown fields and type mismatches raise ConfigError.
nlohmann::json resolve_config(
    const std::optional<std::string> &path, const std::vector<std::pair<std::string, std::string>> &overrides);

/// Same as resolve_config but from an already parsed document.
nlohmann::json resolve_config_json(
    const nlohmann::json &file, const std::vector<std::pair<std::string, std::string>> &overrides);

struct ScanConfig {
    std::string parameter;
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
    std::vector<std::string> quantities;
};

struct SimulateConfig {
    int64_t pulses = 0;
    int64_t chunk_size = 0;
    std::string record;
};

struct FitConfig {
    bool weighted = true;
    std::string spdc;
    std::string h_run;
    std::string v_run;
    std::string interference;
};

struct SpectralConfig {
    JsaParams jsa;
    bool filter = false;
    double filter_center = 0.0;
    double filter_width = 0.0;
    FilterMode filter_mode = FilterMode::kBoth;
    std::string csv;
    std::string grid;
};

struct WignerConfig {
    WignerGridSpec grid;
    int cutoff = 0;
    std::string format;
};

struct InvertConfig {
    std::string stats;
    int order = 0;
    int cutoff = 0;
};

/// Typed view of a resolved configuration.
struct RunConfig {
    ExperimentModel model;
    DetectorArray detectors;
    double total_efficiency = 0.0;
    int cutoff = 0;
    std::optional<uint64_t> seed;
    std::string output;
    ScanConfig scan;
    SimulateConfig simulate;
    FitConfig fit;
    SpectralConfig spectral;
    WignerConfig wigner;
    InvertConfig invert;
};

/// Validates and converts; errors name the offending field.
RunConfig parse_run_config(const nlohmann::json &resolved);

}  // namespace cjlab

#endif
