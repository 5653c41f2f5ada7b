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

#include "cjlab/model.h"

#include "cjlab/errors.h"

namespace cjlab {

namespace {

void require_unit(double v, const char *name) {
    require(v >= 0.0 && v <= 1.0, std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
}

}  // namespace

void ExperimentModel::validate() const {
    require(g >= 1.0, "g must be >= 1, got " + std::to_string(g));
    require(g1 >= 1.0, "g1 must be >= 1, got " + std::to_string(g1));
    require(g2 >= 1.0, "g2 must be >= 1, got " + std::to_string(g2));
    require_unit(o1, "o1");
    require_unit(o2, "o2");
    require_unit(eta_t1, "eta_t1");
    require_unit(eta_t2, "eta_t2");
    require_unit(transmission, "transmission");
    require(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1], got " + std::to_string(eta));
    require(n_d >= 0, "n_d must be >= 0");
}

std::string to_string(InputState input) {
    switch (input) {
        case InputState::k00:
            return "00";
        case InputState::k10:
            return "10";
        case InputState::k01:
            return "01";
        case InputState::k11:
            return "11";
    }
    return "?";
}

InputState parse_input_state(const std::string &text) {
    if (text == "00") {
        return InputState::k00;
    }
    if (text == "10") {
        return InputState::k10;
    }
    if (text == "01") {
        return InputState::k01;
    }
    if (text == "11") {
        return InputState::k11;
    }
    throw DomainError("input state must be one of 00, 10, 01, 11, got '" + text + "'");
}

std::string to_string(SourceModel sources) {
    return sources == SourceModel::kIdeal ? "ideal" : "heralded";
}

SourceModel parse_source_model(const std::string &text) {
    if (text == "ideal") {
        return SourceModel::kIdeal;
    }
    if (text == "heralded") {
        return SourceModel::kHeralded;
    }
    throw DomainError("sources must be 'ideal' or 'heralded', got '" + text + "'");
}

}  // namespace cjlab
