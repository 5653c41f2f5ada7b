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

#ifndef CJLAB_DISTRIBUTIONS_H
#define CJLAB_DISTRIBUTIONS_H

#include <vector>

#include "cjlab/model.h"

namespace cjlab {

/// Single-mode photon-number distribution P_0..P_N plus the mass beyond N.
struct PhotonNumberDist {
    std::vector<double> probs;
    double tail_bound = 0.0;

    int cutoff() const {
        return static_cast<int>(probs.size()) - 1;
    }
    /// P_n, or zero beyond the stored range.
    double at(int n) const {
        return n >= 0 && n < static_cast<int>(probs.size()) ? probs[n] : 0.0;
    }
    double total() const;
    double mean() const;
    bool is_normalized(double tol = 1e-9) const;
    void validate() const;
};

struct OverlapParams {
    double o1 = 1.0;
    double o2 = 1.0;

    void validate() const;
};

struct HeraldedSourceParams {
    double gain_src = 1.0;
    double overlap = 1.0;
    double trig_eff = 1.0;

    void validate() const;
};

/// Coincidence probability behind a beam splitter of transmittance T: (2T-1)^2.
double hom_p11(double transmittance);

/// Probability that |1,1> leaves the crystal as |1,1>: (2-g)^2/g^3.
double cj_p11(double g);

/// P_n = (g-1)^n / g^(n+1).
PhotonNumberDist spdc_dist(double g, int cutoff);

/// Output pair-number distribution for the |1,1> input.
PhotonNumberDist cj_output_dist(double g, int cutoff);

/// H-mode distribution P_{n|jk} for the Fock input |j,k>.
PhotonNumberDist dist_given_input(int j, int k, double g, int cutoff);

/// Output distribution for the overlap-weighted mixture |~j,k>.
///
/// An injected H (V) photon couples to the crystal mode with probability o1 (o2)
/// and is otherwise absent. Overlaps of modes that are not injected are ignored.
PhotonNumberDist tilde_input_dist(
    InputState input, double g, const OverlapParams &ov, int cutoff, OutputMode mode = OutputMode::kH);

/// Number of source photon-number terms kept when summing heralded distributions.
int heralded_sum_limit(double gain_src);

/// Photon number of a heralded mode after overlap thinning, given the trigger fired.
PhotonNumberDist heralded_source_dist(const HeraldedSourceParams &src, int cutoff);

/// Binomial loss channel with survival probability `transmission`.
PhotonNumberDist apply_loss(const PhotonNumberDist &dist, double transmission);

/// Photon-number distribution of one injected mode under `model`.
PhotonNumberDist source_input_dist(const ExperimentModel &model, OutputMode which, int cutoff);

/// P_n = sum_jk P_{n|jk} P_j P_k for the sources of `model`.
///
/// Source pairs with weight below 1e-12 are dropped and their mass is added to
/// tail_bound.
PhotonNumberDist full_output_dist(const ExperimentModel &model, int cutoff, OutputMode mode = OutputMode::kH);

/// Cutoff large enough for the output of `model`.
int default_cutoff(const ExperimentModel &model);

}  // namespace cjlab

#endif
