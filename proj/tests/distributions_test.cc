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

#include "gtest/gtest.h"

#include "cjlab/errors.h"
#include "cjlab/fock.h"
#include "oracles.h"

using namespace cjlab;

namespace {

// Heralded distribution straight from the conditional-probability sum, with
// the trigger probability summed numerically as well.
double heralded_literal(int n, double g, double o, double eta) {
    double num = 0.0;
    double den = 0.0;
    for (int m = 1; m < 3000; m++) {
        double p_m = std::pow((g - 1) / g, m) / g;
        double fire = 1.0 - std::pow(1.0 - eta, m);
        den += p_m * fire;
        if (m >= n) {
            num += p_m * std::exp(std::lgamma(m + 1.0) - std::lgamma(n + 1.0) - std::lgamma(m - n + 1.0)) *
                   std::pow(o, n) * std::pow(1 - o, m - n) * fire;
        }
    }
    return num / den;
}

}  // namespace

TEST(hom_p11, dip_and_limits) {
    ASSERT_EQ(hom_p11(0.5), 0.0);
    ASSERT_EQ(hom_p11(1.0), 1.0);
    ASSERT_EQ(hom_p11(0.0), 1.0);
    ASSERT_NEAR(hom_p11(0.3), 0.16, 1e-15);
    ASSERT_THROW(hom_p11(1.2), DomainError);
}

TEST(cj_p11, matches_matrix_element) {
    for (double g : {1.0, 1.3, 2.0, 2.5, 5.0}) {
        double e = pdc_matrix_element(1, 1, 1, 1, g);
        ASSERT_NEAR(cj_p11(g), e * e, 1e-15);
    }
    ASSERT_EQ(cj_p11(2.0), 0.0);
}

TEST(spdc_dist, geometric) {
    auto d = spdc_dist(2.0, 30);
    ASSERT_NEAR(d.at(0), 0.5, 1e-15);
    ASSERT_NEAR(d.at(3), 1.0 / 16, 1e-15);
    ASSERT_NEAR(d.tail_bound, std::pow(0.5, 31), 1e-20);
    ASSERT_TRUE(d.is_normalized(1e-14));
    ASSERT_NEAR(spdc_dist(1.5, 200).mean(), 0.5, 1e-12);
}

TEST(cj_output_dist, matches_fock_propagation) {
    for (double g : {1.2, 2.0, 3.3}) {
        auto a = cj_output_dist(g, 40);
        auto b = dist_given_input(1, 1, g, 40);
        for (int n = 0; n <= 40; n++) {
            ASSERT_NEAR(a.at(n), b.at(n), 1e-14);
        }
        ASSERT_TRUE(a.is_normalized());
    }
}

TEST(cj_output_dist, integer_gain_suppression) {
    for (int g : {2, 3, 4, 5}) {
        ASSERT_LT(cj_output_dist(g, 20).at(g - 1), 1e-15);
    }
}

TEST(tilde_input_dist, matches_closed_expression) {
    for (double g : {1.21, 2.03}) {
        OverlapParams ov{0.65, 0.74};
        auto d = tilde_input_dist(InputState::k11, g, ov, 60);
        for (int n = 0; n <= 60; n++) {
            ASSERT_NEAR(d.at(n), oracle::p_n_tilde11(n, g, 0.65, 0.74), 1e-14);
        }
    }
}

TEST(tilde_input_dist, v_mode_is_mirror_of_h_mode) {
    OverlapParams ov{0.6, 0.8};
    OverlapParams swapped{0.8, 0.6};
    auto v = tilde_input_dist(InputState::k10, 1.4, ov, 30, OutputMode::kV);
    auto h = tilde_input_dist(InputState::k01, 1.4, swapped, 30, OutputMode::kH);
    for (int n = 0; n <= 30; n++) {
        ASSERT_NEAR(v.at(n), h.at(n), 1e-15);
    }
}

TEST(tilde_input_dist, vacuum_is_spdc) {
    auto a = tilde_input_dist(InputState::k00, 1.7, {}, 40);
    auto b = spdc_dist(1.7, 40);
    for (int n = 0; n <= 40; n++) {
        ASSERT_NEAR(a.at(n), b.at(n), 1e-15);
    }
}

TEST(heralded_source_dist, matches_literal_sum) {
    HeraldedSourceParams src{1.06, 0.7, 0.5};
    auto d = heralded_source_dist(src, 10);
    for (int n = 0; n <= 10; n++) {
        ASSERT_NEAR(d.at(n), heralded_literal(n, 1.06, 0.7, 0.5), 1e-13);
    }
    ASSERT_TRUE(d.is_normalized(1e-12));
    ASSERT_GT(d.at(1), 0.6);
}

TEST(heralded_source_dist, degenerate_sources) {
    ASSERT_THROW(heralded_source_dist({1.0, 0.5, 0.5}, 5), DegenerateSourceError);
    ASSERT_THROW(heralded_source_dist({1.2, 0.5, 0.0}, 5), DegenerateSourceError);
    ASSERT_GE(heralded_sum_limit(1.06), 1);
    ASSERT_LT(std::pow(0.06 / 1.06, heralded_sum_limit(1.06)), 1e-14);
}

TEST(apply_loss, composes_and_scales_mean) {
    auto d = spdc_dist(1.8, 80);
    auto a = apply_loss(apply_loss(d, 0.7), 0.4);
    auto b = apply_loss(d, 0.28);
    for (int n = 0; n <= 80; n++) {
        ASSERT_NEAR(a.at(n), b.at(n), 1e-15);
    }
    ASSERT_NEAR(b.mean(), 0.28 * d.mean(), 1e-12);
    ASSERT_NEAR(b.total() + b.tail_bound, d.total() + d.tail_bound, 1e-14);
    auto none = apply_loss(d, 0.0);
    ASSERT_NEAR(none.at(0), d.total(), 1e-15);
}

TEST(full_output_dist, ideal_sources_reduce_to_overlap_mixture) {
    ExperimentModel model;
    model.g = 2.03;
    model.o1 = 0.65;
    model.o2 = 0.74;
    model.transmission = 0.9;
    int cutoff = default_cutoff(model);
    auto d = full_output_dist(model, cutoff);
    auto expected = tilde_input_dist(InputState::k11, 2.03, {0.65 * 0.9, 0.74 * 0.9}, cutoff);
    for (int n = 0; n <= cutoff; n++) {
        ASSERT_NEAR(d.at(n), expected.at(n), 1e-15);
    }
    ASSERT_TRUE(d.is_normalized(1e-12));
}

TEST(full_output_dist, input_selection) {
    ExperimentModel model;
    model.g = 1.5;
    model.o1 = 0.8;
    model.o2 = 0.3;
    model.input = InputState::k01;
    auto d = full_output_dist(model, 40);
    auto expected = tilde_input_dist(InputState::k01, 1.5, {0.8, 0.3}, 40);
    for (int n = 0; n <= 40; n++) {
        ASSERT_NEAR(d.at(n), expected.at(n), 1e-15);
    }
}

TEST(full_output_dist, heralded_sources_normalized) {
    ExperimentModel model;
    model.g = 1.21;
    model.o1 = 0.65;
    model.o2 = 0.74;
    model.sources = SourceModel::kHeralded;
    auto d = full_output_dist(model, default_cutoff(model));
    ASSERT_TRUE(d.is_normalized(1e-10));
    // Multi-photon admixture shifts weight to higher n than the ideal model.
    model.sources = SourceModel::kIdeal;
    auto ideal = full_output_dist(model, default_cutoff(model));
    ASSERT_GT(d.mean(), ideal.mean());
}

TEST(photon_number_dist, validate) {
    PhotonNumberDist d;
    d.probs = {0.5, 0.4};
    ASSERT_THROW(d.validate(), DomainError);
    d.tail_bound = 0.1;
    ASSERT_NO_THROW(d.validate());
    ASSERT_EQ(d.at(5), 0.0);
}
