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

#ifndef CJLAB_DETECTOR_H
#define CJLAB_DETECTOR_H

#include <cstdint>
#include <span>
#include <vector>

#include "cjlab/distributions.h"

namespace cjlab {

/// Threshold detectors fed from one optical mode.
///
/// efficiencies[k] is the probability that a photon is routed to detector k and
/// detected there; the remainder 1 - sum is lost.
struct DetectorArray {
    std::vector<double> efficiencies;
    int dead_pulses = 0;

    /// `count` detectors sharing `total_efficiency` equally.
    static DetectorArray uniform(int count, double total_efficiency, int dead_pulses = 0);
    /// Dead time in pulses: floor(dead_time / pulse_period).
    static int dead_pulses_from_times(double dead_time, double pulse_period);

    int count() const {
        return static_cast<int>(efficiencies.size());
    }
    double total_efficiency() const;
    void validate() const;
};

/// m-fold coincidence probabilities C_1..C_M.
///
/// C_m is the probability that a given set of m detectors all click, averaged
/// over the m-subsets. counts and sigma are empty for exact (noiseless) values.
struct CoincidenceStats {
    std::vector<double> probs;
    std::vector<int64_t> counts;
    std::vector<double> sigma;
    int64_t pulses = 0;

    int order() const {
        return static_cast<int>(probs.size());
    }
    bool has_sigma() const {
        return sigma.size() == probs.size() && !probs.empty();
    }
    /// Fills sigma_m = sqrt(C_m (1 - C_m) / pulses).
    void attach_poisson_sigma();
    void validate() const;
};

/// Probability that every detector in the subset clicks given exactly n photons.
double click_prob_subset(int n, std::span<const double> subset_effs);

/// Probability that m fixed detectors of efficiency eta all click given n photons.
double equal_eta_click_prob(int n, int m, double eta);

/// C_m for m = 1..M detectors of equal efficiency eta.
CoincidenceStats coincidence_probs(const PhotonNumberDist &dist, double eta, int max_order);

struct DeadtimeCorrection {
    double p = 0.0;
    double lambda = 1.0;
};

/// Recovers the per-pulse click probability p from the dead-time-attenuated rate p*.
DeadtimeCorrection deadtime_correct(double p_star, int n_d);

struct KlyshkoEfficiency {
    double eta_h = 0.0;
    double eta_v = 0.0;
};

/// eta_V = N_HV / N_H and eta_H = N_HV / N_V.
KlyshkoEfficiency klyshko_efficiency(double n_h, double n_v, double n_hv);

/// Click-level g2(0) of a multimode thermal field measured by a 50:50 split onto two
/// threshold detectors.
///
/// Mode j carries mean photon number mean_photons * schmidt_weights[j]. Each photon
/// reaches either arm with probability eta / 2.
double g2_threshold(std::span<const double> schmidt_weights, double mean_photons, double eta);

/// Schmidt weights c_j^2 = (1 - l) l^j of a Gaussian joint spectrum with the given
/// purity, l = (1 - purity) / (1 + purity). Truncated once weights fall below 1e-17.
std::vector<double> geometric_schmidt_weights(double purity);

/// Purity whose geometric Schmidt spectrum reproduces `g2` in g2_threshold.
double threshold_corrected_purity(double g2, double mean_photons, double eta);

}  // namespace cjlab

#endif
