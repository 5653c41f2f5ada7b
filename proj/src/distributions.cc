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

#include "cjlab/distributions.h"

#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "cjlab/errors.h"
#include "cjlab/fock.h"
#include "cjlab/numeric.h"

namespace cjlab {

namespace {

constexpr double kPairWeightFloor = 1e-12;

void require_gain(double g) {
    require(g >= 1.0, "gain must be >= 1, got " + std::to_string(g));
}

void require_cutoff(int cutoff) {
    require(cutoff >= 0, "cutoff must be >= 0");
}

void close_tail(PhotonNumberDist &d) {
    d.tail_bound = std::max(0.0, 1.0 - d.total());
}

PhotonNumberDist delta(int n, int cutoff) {
    PhotonNumberDist d;
    d.probs.assign(cutoff + 1, 0.0);
    if (n <= cutoff) {
        d.probs[n] = 1.0;
    } else {
        d.tail_bound = 1.0;
    }
    return d;
}

// Mixture of Fock inputs |j,k> with weights w.
PhotonNumberDist fock_mixture(
    const std::vector<std::tuple<int, int, double>> &terms, double g, int cutoff, OutputMode mode) {
    std::vector<CompensatedSum> acc(cutoff + 1);
    CompensatedSum tail;
    for (auto [j, k, w] : terms) {
        if (w == 0.0) {
            continue;
        }
        PhotonNumberDist d = mode == OutputMode::kH ? dist_given_input(j, k, g, cutoff) : dist_given_input(k, j, g, cutoff);
        for (int n = 0; n <= cutoff; n++) {
            acc[n] += w * d.probs[n];
        }
        tail += w * d.tail_bound;
    }
    PhotonNumberDist out;
    out.probs.resize(cutoff + 1);
    for (int n = 0; n <= cutoff; n++) {
        out.probs[n] = acc[n].value();
    }
    out.tail_bound = std::max(0.0, tail.value());
    return out;
}

}  // namespace

double PhotonNumberDist::total() const {
    return compensated_total(probs);
}

double PhotonNumberDist::mean() const {
    CompensatedSum acc;
    for (size_t n = 0; n < probs.size(); n++) {
        acc += n * probs[n];
    }
    return acc.value();
}

bool PhotonNumberDist::is_normalized(double tol) const {
    return std::abs(total() + tail_bound - 1.0) <= tol;
}

void PhotonNumberDist::validate() const {
    require(tail_bound >= 0.0, "tail_bound must be >= 0");
    for (double p : probs) {
        require(p >= -1e-15 && p <= 1.0 + 1e-15, "probability outside [0, 1]");
    }
    require(is_normalized(), "distribution is not normalized");
}

void OverlapParams::validate() const {
    require(o1 >= 0.0 && o1 <= 1.0, "o1 must lie in [0, 1]");
    require(o2 >= 0.0 && o2 <= 1.0, "o2 must lie in [0, 1]");
}

void HeraldedSourceParams::validate() const {
    require(gain_src >= 1.0, "source gain must be >= 1");
    require(overlap >= 0.0 && overlap <= 1.0, "overlap must lie in [0, 1]");
    require(trig_eff >= 0.0 && trig_eff <= 1.0, "trigger efficiency must lie in [0, 1]");
}

double hom_p11(double transmittance) {
    require(transmittance >= 0.0 && transmittance <= 1.0, "transmittance must lie in [0, 1]");
    double v = 2.0 * transmittance - 1.0;
    return v * v;
}

double cj_p11(double g) {
    require_gain(g);
    return (2.0 - g) * (2.0 - g) / (g * g * g);
}

PhotonNumberDist spdc_dist(double g, int cutoff) {
    require_gain(g);
    require_cutoff(cutoff);
    const double ratio = (g - 1.0) / g;
    PhotonNumberDist d;
    d.probs.resize(cutoff + 1);
    for (int n = 0; n <= cutoff; n++) {
        d.probs[n] = std::pow(ratio, n) / g;
    }
    d.tail_bound = std::pow(ratio, cutoff + 1);
    return d;
}

PhotonNumberDist cj_output_dist(double g, int cutoff) {
    require_gain(g);
    require_cutoff(cutoff);
    const double ratio = (g - 1.0) / g;
    PhotonNumberDist d;
    d.probs.resize(cutoff + 1);
    d.probs[0] = (g - 1.0) / (g * g);
    for (int n = 1; n <= cutoff; n++) {
        double a = n + 1.0 - g;
        d.probs[n] = std::pow(ratio, n - 1) * a * a / (g * g * g);
    }
    close_tail(d);
    return d;
}

PhotonNumberDist dist_given_input(int j, int k, double g, int cutoff) {
    require_gain(g);
    require_cutoff(cutoff);
    require(j >= 0 && k >= 0, "input occupations must be >= 0");
    PhotonNumberDist d;
    d.probs.assign(cutoff + 1, 0.0);
    for (int n = std::max(0, j - k); n <= cutoff; n++) {
        double a = pdc_matrix_element(n, n - j + k, j, k, g);
        d.probs[n] = a * a;
    }
    close_tail(d);
    return d;
}

PhotonNumberDist tilde_input_dist(InputState input, double g, const OverlapParams &ov, int cutoff, OutputMode mode) {
    require_gain(g);
    require_cutoff(cutoff);
    ov.validate();
    std::vector<std::tuple<int, int, double>> terms;
    switch (input) {
        case InputState::k00:
            terms = {{0, 0, 1.0}};
            break;
        case InputState::k10:
            terms = {{0, 0, 1.0 - ov.o1}, {1, 0, ov.o1}};
            break;
        case InputState::k01:
            terms = {{0, 0, 1.0 - ov.o2}, {0, 1, ov.o2}};
            break;
        case InputState::k11:
            terms = {
                {0, 0, (1.0 - ov.o1) * (1.0 - ov.o2)},
                {0, 1, (1.0 - ov.o1) * ov.o2},
                {1, 0, ov.o1 * (1.0 - ov.o2)},
                {1, 1, ov.o1 * ov.o2},
            };
            break;
    }
    return fock_mixture(terms, g, cutoff, mode);
}

int heralded_sum_limit(double gain_src) {
    require_gain(gain_src);
    if (gain_src == 1.0) {
        return 1;
    }
    double log_ratio = std::log((gain_src - 1.0) / gain_src);
    int m = static_cast<int>(std::ceil(std::log(1e-14) / log_ratio));
    return std::max(m, 1);
}

PhotonNumberDist heralded_source_dist(const HeraldedSourceParams &src, int cutoff) {
    src.validate();
    require_cutoff(cutoff);
    if (src.gain_src == 1.0 || src.trig_eff == 0.0) {
        throw DegenerateSourceError("heralded source never triggers (gain 1 or zero trigger efficiency)");
    }
    const double g = src.gain_src;
    const double eta = src.trig_eff;
    const double o = src.overlap;
    const int m_max = heralded_sum_limit(g);
    const double log_ratio = std::log((g - 1.0) / g);
    const double log_miss = std::log1p(-eta);

    // P(trigger) = 1 - sum_m p_m (1 - eta)^m = (g-1) eta / (1 + (g-1) eta)
    const double trigger = (g - 1.0) * eta / (1.0 + (g - 1.0) * eta);

    PhotonNumberDist d;
    d.probs.assign(cutoff + 1, 0.0);
    for (int n = 0; n <= std::min(cutoff, m_max); n++) {
        CompensatedSum acc;
        for (int m = std::max(n, 1); m <= m_max; m++) {
            double p_m = std::exp(m * log_ratio) / g;
            double fire = eta == 1.0 ? 1.0 : -std::expm1(m * log_miss);
            double thin = std::exp(log_binomial(m, n)) * std::pow(o, n) * std::pow(1.0 - o, m - n);
            acc += p_m * thin * fire;
        }
        d.probs[n] = acc.value() / trigger;
    }
    close_tail(d);
    return d;
}

PhotonNumberDist apply_loss(const PhotonNumberDist &dist, double transmission) {
    require(transmission >= 0.0 && transmission <= 1.0, "transmission must lie in [0, 1]");
    const int cutoff = dist.cutoff();
    PhotonNumberDist out;
    out.probs.assign(cutoff + 1, 0.0);
    out.tail_bound = dist.tail_bound;
    for (int n = 0; n <= cutoff; n++) {
        CompensatedSum acc;
        for (int m = n; m <= cutoff; m++) {
            if (dist.probs[m] == 0.0) {
                continue;
            }
            acc += dist.probs[m] * std::exp(log_binomial(m, n)) * std::pow(transmission, n) *
                   std::pow(1.0 - transmission, m - n);
        }
        out.probs[n] = acc.value();
    }
    return out;
}

PhotonNumberDist source_input_dist(const ExperimentModel &model, OutputMode which, int cutoff) {
    bool injected = which == OutputMode::kH ? model.h_injected() : model.v_injected();
    if (!injected) {
        return delta(0, cutoff);
    }
    double overlap = which == OutputMode::kH ? model.o1 : model.o2;
    if (model.sources == SourceModel::kIdeal) {
        PhotonNumberDist d = delta(0, std::max(cutoff, 1));
        double p = overlap * model.transmission;
        d.probs[0] = 1.0 - p;
        d.probs[1] = p;
        return d;
    }
    HeraldedSourceParams src;
    src.gain_src = which == OutputMode::kH ? model.g1 : model.g2;
    src.trig_eff = which == OutputMode::kH ? model.eta_t1 : model.eta_t2;
    src.overlap = overlap;
    return apply_loss(heralded_source_dist(src, cutoff), model.transmission);
}

PhotonNumberDist full_output_dist(const ExperimentModel &model, int cutoff, OutputMode mode) {
    model.validate();
    require_cutoff(cutoff);
    int source_cutoff = model.sources == SourceModel::kHeralded ? std::max(heralded_sum_limit(model.g1),
                                                                           heralded_sum_limit(model.g2))
                                                                : 1;
    PhotonNumberDist h = source_input_dist(model, OutputMode::kH, source_cutoff);
    PhotonNumberDist v = source_input_dist(model, OutputMode::kV, source_cutoff);

    std::vector<std::tuple<int, int, double>> terms;
    CompensatedSum dropped;
    dropped += h.tail_bound + v.tail_bound - h.tail_bound * v.tail_bound;
    for (int j = 0; j <= h.cutoff(); j++) {
        for (int k = 0; k <= v.cutoff(); k++) {
            double w = h.probs[j] * v.probs[k];
            if (w < kPairWeightFloor) {
                dropped += w;
            } else {
                terms.emplace_back(j, k, w);
            }
        }
    }
    PhotonNumberDist out = fock_mixture(terms, model.g, cutoff, mode);
    out.tail_bound += std::max(0.0, dropped.value());
    return out;
}

int default_cutoff(const ExperimentModel &model) {
    int photons = model.input == InputState::k11 ? 2 : (model.input == InputState::k00 ? 0 : 1);
    int n = choose_cutoff(model.g, photons);
    if (model.sources == SourceModel::kHeralded) {
        n += 8;
    }
    return n;
}

}  // namespace cjlab
