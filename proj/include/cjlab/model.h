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

#ifndef CJLAB_MODEL_H
#define CJLAB_MODEL_H

#include <string>

namespace cjlab {

/// Which heralded photons are sent into the crystal: |~j,k>.
enum class InputState { k00, k10, k01, k11 };

/// Which output mode of the crystal is analyzed.
enum class OutputMode { kH, kV };

/// How the single-photon inputs are modeled.
///
/// kIdeal: each injected mode holds one photon with probability overlap * transmission.
/// kHeralded: photon numbers follow the trigger-conditioned SPDC distribution of
/// the source, thinned by the overlap and then by the transmission.
enum class SourceModel { kIdeal, kHeralded };

struct ExperimentModel {
    double g = 1.0;
    double o1 = 1.0;
    double o2 = 1.0;
    double g1 = 1.06;
    double g2 = 1.06;
    double eta_t1 = 0.5;
    double eta_t2 = 0.5;
    /// Per-detector efficiency of the equal-efficiency array.
    double eta = 0.13;
    int n_d = 0;
    double transmission = 1.0;
    SourceModel sources = SourceModel::kIdeal;
    InputState input = InputState::k11;

    void validate() const;
    bool h_injected() const {
        return input == InputState::k10 || input == InputState::k11;
    }
    bool v_injected() const {
        return input == InputState::k01 || input == InputState::k11;
    }
};

std::string to_string(InputState input);
InputState parse_input_state(const std::string &text);
std::string to_string(SourceModel sources);
SourceModel parse_source_model(const std::string &text);

}  // namespace cjlab

#endif
