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

#include "cjlab/inversion.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"

#include "cjlab/detector.h"
#include "cjlab/distributions.h"
#include "cjlab/errors.h"
#include "oracles.h"

using namespace cjlab;

namespace {

// P1 of the distribution truncated at n <= m, from a dense LU solve of the
// click matrix built by routing enumeration.
double p1_by_dense_solve(const std::vector<double> &c, double eta, int m) {
    std::vector<double> effs(m, eta);
    Eigen::MatrixXd a(m, m);
    for (int row = 1; row <= m; row++) {
        std::vector<int> subset;
        for (int i = 0; i < row; i++) {
            subset.push_back(i);
        }
        for (int n = 1; n <= m; n++) {
            a(row - 1, n - 1) = oracle::click_prob_enumerate(n, effs, subset);
        }
    }
    Eigen::VectorXd rhs(m);
    for (int i = 0; i < m; i++) {
        rhs[i] = c[i];
    }
    return a.fullPivLu().solve(rhs)[0];
}

PhotonNumberDist finite_dist(std::vector<double> probs) {
    PhotonNumberDist d;
    d.probs = std::move(probs);
    return d;
}

}  // namespace

TEST(p1_numerators, generated_match_table) {
    auto gen = generate_p1_numerators(6);
    const auto &table = tabulated_p1_numerators();
    ASSERT_EQ(table.size(), 6u);
    for (int m = 0; m < 6; m++) {
        ASSERT_EQ(gen[m], table[m]) << m + 1;
    }
}

TEST(p1_numerators, higher_orders_are_consistent) {
    auto gen = generate_p1_numerators(12);
    ASSERT_EQ(gen.size(), 12u);
    auto dist = finite_dist({0.3, 0.2, 0.2, 0.1, 0.1, 0.05, 0.05});
    auto stats = coincidence_probs(dist, 0.1, 9);
    ASSERT_NEAR(p1_truncated(stats, 0.1, 9).value, 0.2, 1e-9);
}

TEST(p1_truncated, matches_dense_solve) {
    auto dist = spdc_dist(1.5, 60);
    for (double eta : {0.13, 1.0 / 6}) {
        auto stats = coincidence_probs(dist, eta, 6);
        for (int m = 1; m <= 6; m++) {
            ASSERT_NEAR(p1_truncated(stats, eta, m).value, p1_by_dense_solve(stats.probs, eta, m), 1e-9) << m;
        }
    }
}

TEST(p1_truncated, exact_for_finite_support) {
    auto dist = finite_dist({0.25, 0.35, 0.2, 0.1, 0.05, 0.05});
    auto stats = coincidence_probs(dist, 0.13, 6);
    ASSERT_NEAR(p1_truncated(stats, 0.13, 5).value, 0.35, 1e-10);
    ASSERT_NEAR(p1_truncated(stats, 0.13, 6).value, 0.35, 1e-10);
    ASSERT_GT(std::abs(p1_truncated(stats, 0.13, 4).value - 0.35), 1e-3);
}

TEST(p1_truncated, sigma_propagation) {
    CoincidenceStats stats = coincidence_probs(spdc_dist(1.2, 40), 0.13, 5);
    stats.sigma = {1e-4, 2e-5, 3e-6, 4e-7, 5e-8};
    auto est = p1_truncated(stats, 0.13, 5);
    auto coeffs = p1_coefficients(0.13, 5).coeffs;
    double var = 0.0;
    for (int i = 0; i < 5; i++) {
        var += coeffs[i] * coeffs[i] * stats.sigma[i] * stats.sigma[i];
    }
    ASSERT_NEAR(est.sigma, std::sqrt(var), 1e-12 * std::sqrt(var));
}

TEST(p1_truncated, insufficient_orders) {
    CoincidenceStats stats = coincidence_probs(spdc_dist(1.2, 40), 0.13, 4);
    ASSERT_THROW(p1_truncated(stats, 0.13, 5), DomainError);
}

TEST(p1_truncated, bracketing_of_true_value) {
    // Alternating truncation error: odd orders overshoot, even orders undershoot.
    ExperimentModel model;
    model.g = 1.2;
    model.o1 = 0.65;
    model.o2 = 0.65;
    auto dist = full_output_dist(model, default_cutoff(model));
    auto scan = truncation_scan(dist, 0.13, 6);
    ASSERT_EQ(scan.size(), 6u);
    double truth = dist.at(1);
    ASSERT_LT(scan[5].second, truth);
    ASSERT_GT(scan[4].second, truth);
}

TEST(pn_solve, round_trip_finite_support) {
    auto dist = finite_dist({0.1, 0.3, 0.25, 0.15, 0.1, 0.06, 0.04});
    const double eta = 0.8 / 6;
    auto stats = coincidence_probs(dist, eta, 6);
    auto sol = pn_solve(stats, eta, 6);
    for (int n = 0; n <= 6; n++) {
        ASSERT_NEAR(sol.dist.at(n), dist.at(n), 1e-10);
    }
    ASSERT_FALSE(sol.negative);
    ASSERT_TRUE(sol.ill_conditioned);
}

TEST(pn_solve, flags_noise_driven_negativity) {
    auto dist = finite_dist({0.5, 0.5, 0.0, 0.0});
    auto stats = coincidence_probs(dist, 0.3, 3);
    stats.sigma = {1e-9, 1e-9, 1e-9};
    stats.probs[2] -= 1e-7;
    auto sol = pn_solve(stats, 0.3, 3);
    ASSERT_TRUE(sol.negative);
    ASSERT_EQ(sol.negative_components, std::vector<int>{3});
    ASSERT_LT(sol.dist.at(3), 0.0);
    ASSERT_GT(sol.sigma[3], 0.0);
}

TEST(pn_solve, ill_conditioned_at_low_efficiency) {
    auto stats = coincidence_probs(spdc_dist(1.2, 40), 0.13, 6);
    ASSERT_TRUE(pn_solve(stats, 0.13, 6).ill_conditioned);
    ASSERT_THROW(pn_solve(stats, 0.13, 7), DomainError);
}
