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

#ifndef CJLAB_MONTECARLO_H
#define CJLAB_MONTECARLO_H

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "cjlab/detector.h"
#include "cjlab/model.h"

namespace cjlab {

/// SplitMix64, used as a counter-based generator: each (seed, stream) pair gives an
/// independent sequence.
class SplitMix64 {
   public:
    using result_type = uint64_t;

    SplitMix64(uint64_t seed, uint64_t stream);

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return UINT64_MAX;
    }
    result_type operator()();
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

   private:
    uint64_t state_;
};

/// Detector clicks per pulse, packed K bits per pulse.
///
/// Bit i*K + k of the packed stream (byte (i*K+k)/8, bit (i*K+k)%8, LSB first) is
/// set when detector k clicked on pulse i.
struct ClickRecord {
    int64_t pulses = 0;
    int detectors = 0;
    uint64_t seed = 0;
    int64_t chunk_size = 0;
    std::vector<uint8_t> bits;

    ClickRecord() = default;
    ClickRecord(int64_t pulses, int detectors);

    bool get(int64_t pulse, int detector) const {
        uint64_t i = static_cast<uint64_t>(pulse) * detectors + detector;
        return (bits[i >> 3] >> (i & 7)) & 1;
    }
    void set(int64_t pulse, int detector, bool value) {
        uint64_t i = static_cast<uint64_t>(pulse) * detectors + detector;
        uint8_t mask = static_cast<uint8_t>(1u << (i & 7));
        bits[i >> 3] = value ? (bits[i >> 3] | mask) : (bits[i >> 3] & ~mask);
    }
    /// Number of pulses on which detector k clicked.
    int64_t singles(int detector) const;
};

struct SampleOptions {
    /// Pulses per RNG stream; rounded up to a multiple of 8.
    int64_t chunk_size = 1 << 16;
    /// Worker threads; 0 reads CJLAB_THREADS and falls back to the hardware count.
    int threads = 0;
};

/// Pulse-by-pulse simulation of the source, crystal and detector array.
///
/// Heralded sources are sampled from their trigger-conditioned distribution, so
/// every pulse is a heralded pulse. Dead time is applied per detector afterwards:
/// a registered click blinds that detector for the next n_d pulses.
ClickRecord sample_pulses(
    const ExperimentModel &model,
    const DetectorArray &dets,
    int64_t n_pulses,
    uint64_t seed,
    const SampleOptions &options = {});

/// C_m averaged over all m-subsets of the K detectors, with Poisson sigma.
CoincidenceStats estimate_cm(const ClickRecord &record, int max_order);

/// Worker count from CJLAB_THREADS or the hardware.
int worker_threads();

/// Binary layout: "CJMC", u16 version, u8 K, u8 reserved, u64 pulses, then the packed bits.
void write_click_record(const ClickRecord &record, std::ostream &out);
ClickRecord read_click_record(std::istream &in);

}  // namespace cjlab

#endif
