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

#include "cjlab/fock.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "cjlab/errors.h"
#include "oracles.h"

using namespace cjlab;

TEST(squeeze_params, gain_round_trip) {
    auto p = SqueezeParams::from_gain(2.0);
    ASSERT_NEAR(std::cosh(p.squeeze) * std::cosh(p.squeeze), 2.0, 1e-14);
    auto q = SqueezeParams::from_squeeze(p.squeeze);
    ASSERT_NEAR(q.gain, 2.0, 1e-14);
    ASSERT_THROW(SqueezeParams::from_gain(0.5), DomainError);
    double theta = SqueezeParams::theta_for_transmittance(0.3);
    ASSERT_NEAR(std::cos(theta) * std::cos(theta), 0.3, 1e-14);
}

TEST(fock_state, basis_and_marginals) {
    auto s = TwoModeFockState::basis(4, 2, 1);
    ASSERT_EQ(s.cutoff(), 4);
    ASSERT_TRUE(s.is_normalized());
    auto h = s.h_marginal();
    auto v = s.v_marginal();
    ASSERT_EQ(h[2], 1.0);
    ASSERT_EQ(v[1], 1.0);
    ASSERT_EQ(s.top_layer_population(), 0.0);
}

TEST(block_propagator, pdc_matches_dense_expm) {
    const int cutoff = 10;
    const double r = std::acosh(std::sqrt(1.7));
    Eigen::MatrixXd dense = oracle::pdc_full_expm(cutoff, r);
    BlockPropagator prop(BlockPropagator::Kind::kPdc, cutoff, r);
    const int d = cutoff + 1;
    double worst = 0.0;
    for (int n = 0; n <= cutoff; n++) {
        for (int m = 0; m <= cutoff; m++) {
            for (int j = 0; j <= cutoff; j++) {
                int k = m - n + j;
                if (k < 0 || k > cutoff) {
                    continue;
                }
                auto e = prop.element(n, m, j, k);
                worst = std::max(worst, std::abs(e - dense(n * d + m, j * d + k)));
            }
        }
    }
    ASSERT_LT(worst, 1e-12);
}

TEST(block_propagator, beam_splitter_matches_dense_expm) {
    const int cutoff = 8;
    const double theta = 0.37;
    Eigen::MatrixXd dense = oracle::bs_full_expm(cutoff, theta);
    BlockPropagator prop(BlockPropagator::Kind::kBeamSplitter, cutoff, theta);
    const int d = cutoff + 1;
    double worst = 0.0;
    for (int n = 0; n <= cutoff; n++) {
        for (int m = 0; m <= cutoff; m++) {
            for (int j = 0; j <= cutoff; j++) {
                int k = n + m - j;
                if (k < 0 || k > cutoff) {
                    continue;
                }
                worst = std::max(worst, std::abs(prop.element(n, m, j, k) - dense(n * d + m, j * d + k)));
            }
        }
    }
    ASSERT_LT(worst, 1e-12);
}

TEST(pdc_matrix_element, matches_propagator) {
    for (double g : {1.2, 1.5, 2.0, 3.0}) {
        BlockPropagator prop(BlockPropagator::Kind::kPdc, 40, SqueezeParams::from_gain(g).squeeze);
        for (int j = 0; j <= 4; j++) {
            for (int k = 0; k <= 4; k++) {
                for (int n = 0; n <= 4; n++) {
                    int m = n - j + k;
                    if (m < 0) {
                        continue;
                    }
                    auto e = prop.element(n, m, j, k);
                    ASSERT_NEAR(std::abs(e.imag()), 0.0, 1e-12);
                    ASSERT_NEAR(pdc_matrix_element(n, m, j, k, g), e.real(), 1e-9) << g << " " << n << m << j << k;
                }
            }
        }
    }
}

TEST(pdc_matrix_element, matches_derivative_formula) {
    for (double g : {1.1, 1.5, 2.0, 2.7, 4.0}) {
        for (int j = 0; j <= 6; j++) {
            for (int k = 0; k <= 6; k++) {
                for (int n = 0; n <= 10; n++) {
                    int m = n - j + k;
                    if (m < 0) {
                        continue;
                    }
                    double e = pdc_matrix_element(n, m, j, k, g);
                    double expected = oracle::pdc_prob_derivative(n, j, k, g);
                    ASSERT_NEAR(e * e, expected, 1e-12 * std::max(1.0, expected)) << g << " " << n << j << k;
                }
            }
        }
    }
}

TEST(pdc_matrix_element, single_mode_inputs) {
    const double g = 1.8;
    for (int j = 0; j <= 4; j++) {
        for (int n = j; n <= j + 8; n++) {
            double e = pdc_matrix_element(n, n - j, j, 0, g);
            double expected = oracle::choose(n, j) * std::pow(g - 1.0, n - j) / std::pow(g, n + 1);
            ASSERT_NEAR(e * e, expected, 1e-14);
        }
    }
    for (int k = 0; k <= 4; k++) {
        for (int n = 0; n <= 8; n++) {
            double e = pdc_matrix_element(n, n + k, 0, k, g);
            double expected = oracle::choose(n + k, n) * std::pow(g - 1.0, n) / std::pow(g, n + k + 1);
            ASSERT_NEAR(e * e, expected, 1e-14);
        }
    }
}

TEST(pdc_matrix_element, cj_null_at_gain_two) {
    ASSERT_LT(std::abs(pdc_matrix_element(1, 1, 1, 1, 2.0)), 1e-15);
    ASSERT_GT(std::abs(pdc_matrix_element(1, 1, 1, 1, 2.1)), 1e-3);
}

TEST(pdc_matrix_element, columns_are_normalized) {
    for (double g : {1.3, 2.0}) {
        for (int j = 0; j <= 3; j++) {
            for (int k = 0; k <= 3; k++) {
                double total = 0.0;
                for (int n = 0; n < 400; n++) {
                    int m = n - j + k;
                    if (m >= 0) {
                        double e = pdc_matrix_element(n, m, j, k, g);
                        total += e * e;
                    }
                }
                ASSERT_NEAR(total, 1.0, 1e-12);
            }
        }
    }
}

TEST(pdc_matrix_element, identity_and_selection_rule) {
    ASSERT_EQ(pdc_matrix_element(3, 2, 3, 2, 1.0), 1.0);
    ASSERT_EQ(pdc_matrix_element(3, 3, 3, 2, 1.7), 0.0);
    ASSERT_THROW(pdc_matrix_element(1, 1, 1, 1, 0.9), DomainError);
}

TEST(duality, pdc_and_time_reversed_beam_splitter) {
    for (double g : {1.2, 1.5, 2.0, 3.0}) {
        double theta = SqueezeParams::theta_for_transmittance(1.0 / g);
        for (int n = 0; n <= 6; n++) {
            for (int j = 0; j <= 6; j++) {
                for (int k = 0; k <= 6; k++) {
                    int m = n - j + k;
                    if (m < 0) {
                        continue;
                    }
                    double pdc = pdc_matrix_element(n, m, j, k, g);
                    double bs = bs_matrix_element(n, k, j, m, theta);
                    ASSERT_NEAR(g * pdc * pdc, bs * bs, 1e-12);
                }
            }
        }
    }
}

TEST(bs_matrix_element, hong_ou_mandel_dip) {
    double theta = std::numbers::pi / 4;
    ASSERT_LT(std::abs(bs_matrix_element(1, 1, 1, 1, theta)), 1e-15);
    double e = bs_matrix_element(2, 0, 1, 1, theta);
    ASSERT_NEAR(e * e, 0.5, 1e-14);
}

TEST(bs_matrix_element, matches_propagator) {
    const double theta = 0.9;
    BlockPropagator prop(BlockPropagator::Kind::kBeamSplitter, 8, theta);
    for (int j = 0; j <= 4; j++) {
        for (int k = 0; k <= 4; k++) {
            for (int n = 0; n <= j + k; n++) {
                ASSERT_NEAR(bs_matrix_element(n, j + k - n, j, k, theta), prop.element(n, j + k - n, j, k).real(),
                            1e-12);
            }
        }
    }
}

TEST(apply_pdc_numeric, two_mode_squeezed_vacuum) {
    const double g = 1.5;
    auto out = apply_pdc_numeric(TwoModeFockState::basis(60, 0, 0), SqueezeParams::from_gain(g));
    ASSERT_TRUE(out.is_normalized(1e-12));
    auto h = out.h_marginal();
    for (int n = 0; n < 10; n++) {
        ASSERT_NEAR(h[n], std::pow(g - 1, n) / std::pow(g, n + 1), 1e-12);
    }
}

TEST(apply_pdc_numeric, small_cutoff_rejected) {
    ASSERT_THROW(apply_pdc_numeric(TwoModeFockState::basis(5, 1, 1), SqueezeParams::from_gain(2.0)),
                 CutoffTooSmallError);
}

TEST(apply_bs_numeric, hom) {
    auto out = apply_bs_numeric(TwoModeFockState::basis(4, 1, 1), std::numbers::pi / 4);
    ASSERT_TRUE(out.is_normalized());
    ASSERT_LT(std::norm(out(1, 1)), 1e-30);
    ASSERT_NEAR(std::norm(out(2, 0)), 0.5, 1e-14);
}

TEST(choose_cutoff, tail_below_threshold) {
    ASSERT_EQ(choose_cutoff(1.0, 0), 2);
    ASSERT_EQ(choose_cutoff(1.0, 5), 5);
    for (double g : {1.2, 2.0, 3.0}) {
        int n = choose_cutoff(g, 2) - 2;
        double ratio = (g - 1) / g;
        ASSERT_LT(std::pow(ratio, n + 1), 1e-12);
        ASSERT_GE(std::pow(ratio, n), 1e-12);
    }
    ASSERT_EQ(choose_cutoff(2.0, 6) - choose_cutoff(2.0, 2), 4);
}
