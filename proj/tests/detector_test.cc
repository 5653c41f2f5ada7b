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

#include "cjlab/detector.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"

#include "cjlab/distributions.h"
#include "cjlab/errors.h"
#include "oracles.h"

using namespace cjlab;

TEST(detector_array, uniform_and_validation) {
    auto d = DetectorArray::uniform(6, 0.78);
    ASSERT_EQ(d.count(), 6);
    ASSERT_NEAR(d.efficiencies[0], 0.13, 1e-15);
    ASSERT_NEAR(d.total_efficiency(), 0.78, 1e-15);
    DetectorArray bad{{0.6, 0.6}, 0};
    ASSERT_THROW(bad.validate(), DomainError);
    ASSERT_EQ(DetectorArray::dead_pulses_from_times(20e-9, 12.5e-9), 1);
    ASSERT_EQ(DetectorArray::dead_pulses_from_times(5e-9, 12.5e-9), 0);
}

TEST(click_prob_subset, matches_routing_enumeration) {
    std::vector<double> effs{0.1, 0.15, 0.2, 0.05, 0.12};
    std::vector<int> all{0, 1, 2, 3, 4};
    for (int size = 1; size <= 5; size++) {
        std::vector<int> subset(all.begin(), all.begin() + size);
        std::vector<double> sub_effs(effs.begin(), effs.begin() + size);
        for (int n = 0; n <= 6; n++) {
            double expected = oracle::click_prob_enumerate(n, effs, subset);
            ASSERT_NEAR(click_prob_subset(n, sub_effs), expected, 1e-13) << n << " " << size;
        }
    }
}

TEST(equal_eta_click_prob, matches_subset_form) {
    for (int m = 1; m <= 6; m++) {
        std::vector<double> effs(m, 0.13);
        for (int n = 0; n <= 12; n++) {
            ASSERT_NEAR(equal_eta_click_prob(n, m, 0.13), click_prob_subset(n, effs), 1e-13);
        }
    }
    ASSERT_EQ(equal_eta_click_prob(2, 3, 0.1), 0.0);
    ASSERT_NEAR(equal_eta_click_prob(1, 1, 0.1), 0.1, 1e-16);
}

TEST(coincidence_probs, finite_support_by_enumeration) {
    PhotonNumberDist d;
    d.probs = {0.2, 0.3, 0.25, 0.15, 0.1};
    auto stats = coincidence_probs(d, 0.16, 6);
    ASSERT_EQ(stats.order(), 6);
    std::vector<double> effs(6, 0.16);
    for (int m = 1; m <= 6; m++) {
        std::vector<int> subset;
        for (int i = 0; i < m; i++) {
            subset.push_back(i);
        }
        double expected = 0.0;
        for (int n = 0; n <= 4; n++) {
            expected += d.probs[n] * oracle::click_prob_enumerate(n, effs, subset);
        }
        ASSERT_NEAR(stats.probs[m - 1], expected, 1e-15);
    }
    ASSERT_EQ(stats.probs[4], 0.0);
}

TEST(coincidence_probs, decreasing_in_order) {
    auto stats = coincidence_probs(spdc_dist(2.0, 60), 0.13, 6);
    for (int m = 1; m < 6; m++) {
        ASSERT_LT(stats.probs[m], stats.probs[m - 1]);
    }
}

TEST(coincidence_stats, poisson_sigma) {
    CoincidenceStats s;
    s.probs = {0.1, 0.01};
    s.counts = {100000, 10000};
    s.pulses = 1000000;
    s.attach_poisson_sigma();
    ASSERT_TRUE(s.has_sigma());
    ASSERT_NEAR(s.sigma[0], std::sqrt(0.1 * 0.9 / 1e6), 1e-12);
    s.probs = {1.5};
    ASSERT_THROW(s.validate(), DomainError);
}

TEST(deadtime_correct, inverts_attenuation) {
    const double p = 0.1;
    for (int n_d : {0, 1, 3}) {
        double p_star = p / (1.0 + n_d * p);
        auto c = deadtime_correct(p_star, n_d);
        ASSERT_NEAR(c.p, p, 1e-15);
        ASSERT_NEAR(c.lambda, 1.0 - n_d * p_star, 1e-15);
    }
    ASSERT_THROW(deadtime_correct(0.6, 1), DomainError);
}

TEST(klyshko_efficiency, heralding_ratios) {
    auto k = klyshko_efficiency(1000.0, 800.0, 200.0);
    ASSERT_NEAR(k.eta_v, 0.2, 1e-15);
    ASSERT_NEAR(k.eta_h, 0.25, 1e-15);
    ASSERT_THROW(klyshko_efficiency(100.0, 50.0, 60.0), DomainError);
}

TEST(g2_threshold, matches_product_formula) {
    for (double purity : {0.5, 0.8, 0.93, 1.0}) {
        auto w = geometric_schmidt_weights(purity);
        for (double mu : {1e-3, 0.021, 0.3}) {
            for (double eta : {0.2, 1.0}) {
                ASSERT_NEAR(g2_threshold(w, mu, eta), oracle::g2_threshold_product(w, mu, eta), 1e-9)
                    << purity << " " << mu << " " << eta;
            }
        }
    }
}

TEST(g2_threshold, low_flux_limit) {
    for (double purity : {0.6, 0.93}) {
        auto w = geometric_schmidt_weights(purity);
        ASSERT_NEAR(g2_threshold(w, 1e-6, 1.0), 1.0 + purity, 1e-5);
    }
    std::vector<double> single{1.0};
    ASSERT_NEAR(g2_threshold(single, 1e-7, 0.5), 2.0, 1e-6);
}

TEST(geometric_schmidt_weights, purity_and_sum) {
    for (double purity : {0.2, 0.7, 0.93, 1.0}) {
        auto w = geometric_schmidt_weights(purity);
        double total = 0.0;
        double sq = 0.0;
        for (double x : w) {
            total += x;
            sq += x * x;
        }
        ASSERT_NEAR(total, 1.0, 1e-12);
        ASSERT_NEAR(sq, purity, 1e-10);
    }
}

TEST(threshold_corrected_purity, round_trip) {
    for (double purity : {0.5, 0.8, 0.93}) {
        auto w = geometric_schmidt_weights(purity);
        double g2 = g2_threshold(w, 0.021, 1.0);
        ASSERT_NEAR(threshold_corrected_purity(g2, 0.021, 1.0), purity, 1e-7);
    }
}
