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

#include "cjlab/montecarlo.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <map>
#include <string>
#include <thread>

#include "cjlab/distributions.h"
#include "cjlab/errors.h"
#include "cjlab/fock.h"
#include "cjlab/numeric.h"

namespace cjlab {

namespace {

constexpr char kMagic[4] = {'C', 'J', 'M', 'C'};
constexpr uint16_t kVersion = 1;

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Inverse-CDF sampler over 0..size-1; mass beyond the table maps to the last entry.
class Sampler {
   public:
    Sampler() = default;
    explicit Sampler(const std::vector<double> &probs) {
        CompensatedSum acc;
        for (double p : probs) {
            acc += std::max(0.0, p);
            cdf_.push_back(acc.value());
        }
        while (cdf_.size() > 1 && probs[cdf_.size() - 1] == 0.0) {
            cdf_.pop_back();
        }
    }
    int operator()(double u) const {
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) {
            return static_cast<int>(cdf_.size()) - 1;
        }
        return static_cast<int>(it - cdf_.begin());
    }
    int max_value() const {
        return static_cast<int>(cdf_.size()) - 1;
    }

   private:
    std::vector<double> cdf_;
};

/// Photon number of one source before overlap and transmission losses.
Sampler source_sampler(const ExperimentModel &model, OutputMode which) {
    bool injected = which == OutputMode::kH ? model.h_injected() : model.v_injected();
    if (!injected) {
        return Sampler({1.0});
    }
    if (model.sources == SourceModel::kIdeal) {
        return Sampler({0.0, 1.0});
    }
    double g = which == OutputMode::kH ? model.g1 : model.g2;
    double eta = which == OutputMode::kH ? model.eta_t1 : model.eta_t2;
    HeraldedSourceParams unit;
    unit.gain_src = g;
    unit.trig_eff = eta;
    unit.overlap = 1.0;
    return Sampler(heralded_source_dist(unit, heralded_sum_limit(g)).probs);
}

struct Tables {
    Sampler h_source;
    Sampler v_source;
    double h_keep = 0.0;
    double v_keep = 0.0;
    // pdc[j][k] samples the H-mode output photon number for input |j,k>.
    std::vector<std::vector<Sampler>> pdc;
    std::vector<double> routing;
};

Tables build_tables(const ExperimentModel &model, const DetectorArray &dets) {
    Tables t;
    t.h_source = source_sampler(model, OutputMode::kH);
    t.v_source = source_sampler(model, OutputMode::kV);
    t.h_keep = model.o1 * model.transmission;
    t.v_keep = model.o2 * model.transmission;
    int j_max = t.h_source.max_value();
    int k_max = t.v_source.max_value();
    int cutoff = choose_cutoff(model.g, 2) + std::max(j_max, k_max);
    t.pdc.resize(j_max + 1);
    for (int j = 0; j <= j_max; j++) {
        for (int k = 0; k <= k_max; k++) {
            t.pdc[j].emplace_back(dist_given_input(j, k, model.g, cutoff).probs);
        }
    }
    CompensatedSum acc;
    for (double e : dets.efficiencies) {
        acc += e;
        t.routing.push_back(acc.value());
    }
    return t;
}

int thin(int n, double keep, SplitMix64 &rng) {
    int kept = 0;
    for (int i = 0; i < n; i++) {
        kept += rng.uniform() < keep;
    }
    return kept;
}

void sample_chunk(const Tables &t, ClickRecord &record, int64_t begin, int64_t end, SplitMix64 &rng) {
    const int detectors = record.detectors;
    for (int64_t pulse = begin; pulse < end; pulse++) {
        int j = thin(t.h_source(rng.uniform()), t.h_keep, rng);
        int k = thin(t.v_source(rng.uniform()), t.v_keep, rng);
        int n = t.pdc[j][k](rng.uniform());
        for (int photon = 0; photon < n; photon++) {
            double u = rng.uniform();
            auto it = std::upper_bound(t.routing.begin(), t.routing.end(), u);
            if (it != t.routing.end()) {
                int d = static_cast<int>(it - t.routing.begin());
                if (d < detectors) {
                    record.set(pulse, d, true);
                }
            }
        }
    }
}

void put_u16(std::ostream &out, uint16_t v) {
    char b[2] = {static_cast<char>(v & 0xFF), static_cast<char>(v >> 8)};
    out.write(b, 2);
}

void put_u64(std::ostream &out, uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; i++) {
        b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    }
    out.write(b, 8);
}

}  // namespace

SplitMix64::SplitMix64(uint64_t seed, uint64_t stream) : state_(mix64(seed ^ mix64(stream + 0x9E3779B97F4A7C15ULL))) {
}

SplitMix64::result_type SplitMix64::operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
}

double SplitMix64::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

ClickRecord::ClickRecord(int64_t pulses, int detectors) : pulses(pulses), detectors(detectors) {
    require(pulses >= 0, "pulse count must be >= 0");
    require(detectors >= 1 && detectors <= 255, "detector count must lie in [1, 255]");
    bits.assign((static_cast<uint64_t>(pulses) * detectors + 7) / 8, 0);
}

int64_t ClickRecord::singles(int detector) const {
    int64_t n = 0;
    for (int64_t i = 0; i < pulses; i++) {
        n += get(i, detector);
    }
    return n;
}

int worker_threads() {
    if (const char *env = std::getenv("CJLAB_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) {
            return n;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ClickRecord sample_pulses(
    const ExperimentModel &model,
    const DetectorArray &dets,
    int64_t n_pulses,
    uint64_t seed,
    const SampleOptions &options) {
    model.validate();
    dets.validate();
    require(n_pulses >= 1, "pulse count must be >= 1");
    require(options.chunk_size >= 1, "chunk size must be >= 1");

    ClickRecord record(n_pulses, dets.count());
    record.seed = seed;
    record.chunk_size = (options.chunk_size + 7) / 8 * 8;

    Tables tables = build_tables(model, dets);
    const int64_t chunks = (n_pulses + record.chunk_size - 1) / record.chunk_size;
    const int threads =
        static_cast<int>(std::min<int64_t>(chunks, options.threads > 0 ? options.threads : worker_threads()));

    // Chunks span whole bytes, so workers never share a byte of the record.
    std::atomic<int64_t> next{0};
    auto work = [&] {
        for (int64_t c = next++; c < chunks; c = next++) {
            SplitMix64 rng(seed, static_cast<uint64_t>(c));
            int64_t begin = c * record.chunk_size;
            int64_t end = std::min(n_pulses, begin + record.chunk_size);
            sample_chunk(tables, record, begin, end, rng);
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; i++) {
            pool.emplace_back(work);
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    if (dets.dead_pulses > 0) {
        for (int d = 0; d < record.detectors; d++) {
            int64_t last = -static_cast<int64_t>(dets.dead_pulses) - 1;
            for (int64_t i = 0; i < n_pulses; i++) {
                if (!record.get(i, d)) {
                    continue;
                }
                if (i - last <= dets.dead_pulses) {
                    record.set(i, d, false);
                } else {
                    last = i;
                }
            }
        }
    }
    return record;
}

CoincidenceStats estimate_cm(const ClickRecord &record, int max_order) {
    require(record.pulses >= 1, "click record is empty");
    require(max_order >= 1 && max_order <= record.detectors,
            "coincidence order must lie in [1, " + std::to_string(record.detectors) + "]");
    const int k = record.detectors;
    std::vector<int64_t> hist(k + 1, 0);
    for (int64_t i = 0; i < record.pulses; i++) {
        int c = 0;
        for (int d = 0; d < k; d++) {
            c += record.get(i, d);
        }
        hist[c]++;
    }
    CoincidenceStats stats;
    stats.pulses = record.pulses;
    for (int m = 1; m <= max_order; m++) {
        // Each pulse with c clicks contributes C(c, m) clicking m-subsets.
        int64_t events = 0;
        for (int c = m; c <= k; c++) {
            events += hist[c] * static_cast<int64_t>(binomial(c, m));
        }
        stats.counts.push_back(events);
        stats.probs.push_back(static_cast<double>(events) / (static_cast<double>(record.pulses) * binomial(k, m)));
    }
    stats.attach_poisson_sigma();
    return stats;
}

void write_click_record(const ClickRecord &record, std::ostream &out) {
    out.write(kMagic, 4);
    put_u16(out, kVersion);
    char k = static_cast<char>(record.detectors);
    char reserved = 0;
    out.write(&k, 1);
    out.write(&reserved, 1);
    put_u64(out, static_cast<uint64_t>(record.pulses));
    out.write(reinterpret_cast<const char *>(record.bits.data()), static_cast<std::streamsize>(record.bits.size()));
    if (!out) {
        throw IoError("failed to write click record");
    }
}

ClickRecord read_click_record(std::istream &in) {
    unsigned char header[16];
    if (!in.read(reinterpret_cast<char *>(header), 16)) {
        throw IoError("click record truncated: missing header");
    }
    if (std::memcmp(header, kMagic, 4) != 0) {
        throw IoError("click record has bad magic");
    }
    uint16_t version = static_cast<uint16_t>(header[4] | (header[5] << 8));
    if (version != kVersion) {
        throw IoError("unsupported click record version " + std::to_string(version));
    }
    int k = header[6];
    uint64_t pulses = 0;
    for (int i = 0; i < 8; i++) {
        pulses |= static_cast<uint64_t>(header[8 + i]) << (8 * i);
    }
    if (k < 1) {
        throw IoError("click record has zero detectors");
    }
    ClickRecord record(static_cast<int64_t>(pulses), k);
    if (!in.read(reinterpret_cast<char *>(record.bits.data()), static_cast<std::streamsize>(record.bits.size()))) {
        throw IoError("click record truncated: expected " + std::to_string(record.bits.size()) + " data bytes");
    }
    return record;
}

}  // namespace cjlab
