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

#include "cjlab/config.h"

#include <fstream>
#include <sstream>

#include "cjlab/errors.h"

namespace cjlab {

using nlohmann::json;

namespace {

std::string dotted(const std::string &parent, const std::string &key) {
    return parent.empty() ? key : parent + "." + key;
}

json::json_pointer pointer_for(const std::string &path) {
    std::string p = "/";
    for (char c : path) {
        p += c == '.' ? '/' : c;
    }
    return json::json_pointer(p);
}

bool same_kind(const json &def, const json &value) {
    if (def.is_null()) {
        return value.is_null() || value.is_number_unsigned() ||
               (value.is_number_integer() && value.get<int64_t>() >= 0);
    }
    if (def.is_number_float()) {
        return value.is_number();
    }
    if (def.is_number_integer()) {
        return value.is_number_integer();
    }
    if (def.is_boolean()) {
        return value.is_boolean();
    }
    if (def.is_string()) {
        return value.is_string();
    }
    if (def.is_array()) {
        if (!value.is_array()) {
            return false;
        }
        for (const auto &v : value) {
            if (!v.is_string()) {
                return false;
            }
        }
        return true;
    }
    return false;
}

std::string kind_name(const json &def) {
    if (def.is_null()) {
        return "a non-negative integer or null";
    }
    if (def.is_number_float()) {
        return "a number";
    }
    if (def.is_number_integer()) {
        return "an integer";
    }
    if (def.is_boolean()) {
        return "a boolean";
    }
    if (def.is_string()) {
        return "a string";
    }
    return "a list of strings";
}

void overlay(json &target, const json &source, const std::string &path) {
    if (!source.is_object()) {
        throw ConfigError(path, "expected an object");
    }
    for (auto it = source.begin(); it != source.end(); ++it) {
        std::string field = dotted(path, it.key());
        if (!target.contains(it.key())) {
            throw ConfigError(field, "unknown field");
        }
        json &slot = target[it.key()];
        if (slot.is_object()) {
            overlay(slot, it.value(), field);
        } else if (!same_kind(slot, it.value())) {
            throw ConfigError(field, "expected " + kind_name(slot));
        } else {
            slot = it.value();
        }
    }
}

json convert_text(const json &def, const std::string &text, const std::string &field) {
    try {
        size_t used = 0;
        if (def.is_null()) {
            if (text.empty() || text[0] == '-') {
                throw std::invalid_argument("negative");
            }
            uint64_t v = std::stoull(text, &used);
            if (used != text.size()) {
                throw std::invalid_argument("trailing");
            }
            return v;
        }
        if (def.is_number_float()) {
            double v = std::stod(text, &used);
            if (used != text.size()) {
                throw std::invalid_argument("trailing");
            }
            return v;
        }
        if (def.is_number_integer()) {
            long long v = std::stoll(text, &used);
            if (used != text.size()) {
                throw std::invalid_argument("trailing");
            }
            return v;
        }
    } catch (const std::logic_error &) {
        throw ConfigError(field, "cannot read '" + text + "' as " + kind_name(def));
    }
    if (def.is_boolean()) {
        if (text == "true" || text == "1") {
            return true;
        }
        if (text == "false" || text == "0") {
            return false;
        }
        throw ConfigError(field, "cannot read '" + text + "' as a boolean");
    }
    if (def.is_array()) {
        json list = json::array();
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) {
                list.push_back(item);
            }
        }
        return list;
    }
    return text;
}

template <typename T>
T field_as(const json &cfg, const std::string &path) {
    return cfg.at(pointer_for(path)).get<T>();
}

void check(bool ok, const std::string &field, const std::string &what) {
    if (!ok) {
        throw ConfigError(field, what);
    }
}

}  // namespace

json default_config() {
    return json::parse(R"JSON({
        "model": {
            "g": 2.03,
            "o1": 0.65,
            "o2": 0.74,
            "g1": 1.06,
            "g2": 1.06,
            "eta_t1": 0.5,
            "eta_t2": 0.5,
            "transmission": 1.0,
            "sources": "ideal",
            "input": "11"
        },
        "detector": {
            "count": 6,
            "total_efficiency": 0.78,
            "dead_pulses": 0
        },
        "cutoff": 0,
        "seed": null,
        "output": "",
        "scan": {
            "parameter": "g",
            "start": 1.0,
            "stop": 3.0,
            "steps": 21,
            "quantities": ["p1", "p1_5det", "p1_6det", "cm"]
        },
        "simulate": {
            "pulses": 1000000,
            "chunk_size": 65536,
            "record": ""
        },
        "fit": {
            "weighted": true,
            "spdc": "",
            "h_run": "",
            "v_run": "",
            "interference": ""
        },
        "spectral": {
            "pump_sigma": 1.0,
            "pm_length": 4.0,
            "gvm_slope": 0.5,
            "grid_size": 256,
            "span_sigmas": 14.0,
            "shape": "sinc",
            "filter": {
                "enabled": false,
                "center": 0.0,
                "width": 2.0,
                "mode": "both"
            },
            "csv": "",
            "grid": ""
        },
        "wigner": {
            "px_min": -4.0,
            "px_max": 4.0,
            "px_steps": 201,
            "y_min": -4.0,
            "y_max": 4.0,
            "y_steps": 201,
            "cutoff": 0,
            "format": "csv"
        },
        "invert": {
            "stats": "",
            "order": 6,
            "cutoff": 6
        }
    })JSON");
}

json resolve_config_json(const json &file, const std::vector<std::pair<std::string, std::string>> &overrides) {
    json cfg = default_config();
    if (!file.is_null()) {
        const json &body = file.is_object() && file.contains("config") && file["config"].is_object() ? file["config"]
                                                                                                     : file;
        overlay(cfg, body, "");
    }
    for (const auto &[path, text] : overrides) {
        auto ptr = pointer_for(path);
        if (!cfg.contains(ptr) || cfg.at(ptr).is_object()) {
            throw ConfigError(path, "unknown field");
        }
        cfg[ptr] = convert_text(cfg.at(ptr), text, path);
    }
    return cfg;
}

json resolve_config(
    const std::optional<std::string> &path, const std::vector<std::pair<std::string, std::string>> &overrides) {
    json file;
    if (path) {
        std::ifstream in(*path);
        if (!in) {
            throw IoError("cannot open config file " + *path);
        }
        try {
            file = json::parse(in);
        } catch (const json::parse_error &e) {
            throw ConfigError(*path, std::string("invalid JSON: ") + e.what());
        }
    }
    return resolve_config_json(file, overrides);
}

RunConfig parse_run_config(const json &cfg) {
    RunConfig rc;
    ExperimentModel &m = rc.model;
    m.g = field_as<double>(cfg, "model.g");
    m.o1 = field_as<double>(cfg, "model.o1");
    m.o2 = field_as<double>(cfg, "model.o2");
    m.g1 = field_as<double>(cfg, "model.g1");
    m.g2 = field_as<double>(cfg, "model.g2");
    m.eta_t1 = field_as<double>(cfg, "model.eta_t1");
    m.eta_t2 = field_as<double>(cfg, "model.eta_t2");
    m.transmission = field_as<double>(cfg, "model.transmission");
    try {
        m.sources = parse_source_model(field_as<std::string>(cfg, "model.sources"));
    } catch (const DomainError &e) {
        throw ConfigError("model.sources", e.what());
    }
    try {
        m.input = parse_input_state(field_as<std::string>(cfg, "model.input"));
    } catch (const DomainError &e) {
        throw ConfigError("model.input", e.what());
    }

    int count = field_as<int>(cfg, "detector.count");
    check(count >= 1 && count <= 255, "detector.count", "must lie in [1, 255]");
    rc.total_efficiency = field_as<double>(cfg, "detector.total_efficiency");
    check(rc.total_efficiency > 0.0 && rc.total_efficiency <= 1.0, "detector.total_efficiency", "must lie in (0, 1]");
    int dead = field_as<int>(cfg, "detector.dead_pulses");
    check(dead >= 0, "detector.dead_pulses", "must be >= 0");
    rc.detectors = DetectorArray::uniform(count, rc.total_efficiency, dead);
    m.eta = rc.total_efficiency / count;
    m.n_d = dead;
    try {
        m.validate();
    } catch (const DomainError &e) {
        throw ConfigError("model", e.what());
    }

    rc.cutoff = field_as<int>(cfg, "cutoff");
    check(rc.cutoff >= 0, "cutoff", "must be >= 0 (0 selects automatically)");
    if (!cfg.at("seed").is_null()) {
        rc.seed = cfg.at("seed").get<uint64_t>();
    }
    rc.output = field_as<std::string>(cfg, "output");

    rc.scan.parameter = field_as<std::string>(cfg, "scan.parameter");
    rc.scan.start = field_as<double>(cfg, "scan.start");
    rc.scan.stop = field_as<double>(cfg, "scan.stop");
    rc.scan.steps = field_as<int>(cfg, "scan.steps");
    rc.scan.quantities = field_as<std::vector<std::string>>(cfg, "scan.quantities");
    check(rc.scan.steps >= 1, "scan.steps", "must be >= 1");

    rc.simulate.pulses = field_as<int64_t>(cfg, "simulate.pulses");
    rc.simulate.chunk_size = field_as<int64_t>(cfg, "simulate.chunk_size");
    rc.simulate.record = field_as<std::string>(cfg, "simulate.record");
    check(rc.simulate.pulses >= 1, "simulate.pulses", "must be >= 1");
    check(rc.simulate.chunk_size >= 1, "simulate.chunk_size", "must be >= 1");

    rc.fit.weighted = field_as<bool>(cfg, "fit.weighted");
    rc.fit.spdc = field_as<std::string>(cfg, "fit.spdc");
    rc.fit.h_run = field_as<std::string>(cfg, "fit.h_run");
    rc.fit.v_run = field_as<std::string>(cfg, "fit.v_run");
    rc.fit.interference = field_as<std::string>(cfg, "fit.interference");

    SpectralConfig &sp = rc.spectral;
    sp.jsa.pump_sigma = field_as<double>(cfg, "spectral.pump_sigma");
    sp.jsa.pm_length = field_as<double>(cfg, "spectral.pm_length");
    sp.jsa.gvm_slope = field_as<double>(cfg, "spectral.gvm_slope");
    sp.jsa.grid_size = field_as<int>(cfg, "spectral.grid_size");
    sp.jsa.span_sigmas = field_as<double>(cfg, "spectral.span_sigmas");
    check(sp.jsa.pump_sigma > 0.0, "spectral.pump_sigma", "must be > 0");
    check(sp.jsa.pm_length > 0.0, "spectral.pm_length", "must be > 0");
    check(sp.jsa.gvm_slope > 0.0, "spectral.gvm_slope", "must be > 0");
    check(sp.jsa.grid_size >= 64 && sp.jsa.grid_size <= 4096, "spectral.grid_size", "must lie in [64, 4096]");
    check(sp.jsa.span_sigmas > 0.0, "spectral.span_sigmas", "must be > 0");
    std::string shape = field_as<std::string>(cfg, "spectral.shape");
    check(shape == "sinc" || shape == "gaussian", "spectral.shape", "must be 'sinc' or 'gaussian'");
    sp.jsa.shape = shape == "sinc" ? PhaseMatching::kSinc : PhaseMatching::kGaussian;
    sp.filter = field_as<bool>(cfg, "spectral.filter.enabled");
    sp.filter_center = field_as<double>(cfg, "spectral.filter.center");
    sp.filter_width = field_as<double>(cfg, "spectral.filter.width");
    check(sp.filter_width > 0.0, "spectral.filter.width", "must be > 0");
    std::string mode = field_as<std::string>(cfg, "spectral.filter.mode");
    if (mode == "idler") {
        sp.filter_mode = FilterMode::kIdler;
    } else if (mode == "signal") {
        sp.filter_mode = FilterMode::kSignal;
    } else if (mode == "both") {
        sp.filter_mode = FilterMode::kBoth;
    } else {
        throw ConfigError("spectral.filter.mode", "must be 'idler', 'signal' or 'both'");
    }
    sp.csv = field_as<std::string>(cfg, "spectral.csv");
    sp.grid = field_as<std::string>(cfg, "spectral.grid");

    WignerConfig &w = rc.wigner;
    w.grid.px_min = field_as<double>(cfg, "wigner.px_min");
    w.grid.px_max = field_as<double>(cfg, "wigner.px_max");
    w.grid.px_steps = field_as<int>(cfg, "wigner.px_steps");
    w.grid.y_min = field_as<double>(cfg, "wigner.y_min");
    w.grid.y_max = field_as<double>(cfg, "wigner.y_max");
    w.grid.y_steps = field_as<int>(cfg, "wigner.y_steps");
    w.cutoff = field_as<int>(cfg, "wigner.cutoff");
    w.format = field_as<std::string>(cfg, "wigner.format");
    check(w.grid.px_steps >= 1 && w.grid.px_steps <= 4096, "wigner.px_steps", "must lie in [1, 4096]");
    check(w.grid.y_steps >= 1 && w.grid.y_steps <= 4096, "wigner.y_steps", "must lie in [1, 4096]");
    check(w.grid.px_max >= w.grid.px_min, "wigner.px_max", "must be >= wigner.px_min");
    check(w.grid.y_max >= w.grid.y_min, "wigner.y_max", "must be >= wigner.y_min");
    check(w.cutoff == 0 || w.cutoff >= 2, "wigner.cutoff", "must be 0 (automatic) or >= 2");
    check(w.format == "csv" || w.format == "grid", "wigner.format", "must be 'csv' or 'grid'");

    rc.invert.stats = field_as<std::string>(cfg, "invert.stats");
    rc.invert.order = field_as<int>(cfg, "invert.order");
    rc.invert.cutoff = field_as<int>(cfg, "invert.cutoff");
    check(rc.invert.order >= 1, "invert.order", "must be >= 1");
    check(rc.invert.cutoff >= 1, "invert.cutoff", "must be >= 1");
    return rc;
}

}  // namespace cjlab
