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

// Brute-force reference implementations used only by the tests. Each one
// takes a different route than the library code it checks.

#ifndef CJLAB_TESTS_ORACLES_H
#define CJLAB_TESTS_ORACLES_H

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; i++) {
        f *= i;
    }
    return f;
}

inline double choose(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    return factorial(n) / (factorial(k) * factorial(n - k));
}

/// Dense exp of the PDC generator r(a^+ b^+ - a b) on the full (N+1)^2 space.
/// Index of |h, v> is h * (N + 1) + v.
inline Eigen::MatrixXd pdc_full_expm(int cutoff, double r) {
    const int d = cutoff + 1;
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(d * d, d * d);
    for (int h = 0; h < cutoff; h++) {
        for (int v = 0; v < cutoff; v++) {
            double c = r * std::sqrt((h + 1.0) * (v + 1.0));
            gen((h + 1) * d + v + 1, h * d + v) += c;
            gen(h * d + v, (h + 1) * d + v + 1) -= c;
        }
    }
    return gen.exp();
}

/// Dense exp of theta(a^+ b - b^+ a).
inline Eigen::MatrixXd bs_full_expm(int cutoff, double theta) {
    const int d = cutoff + 1;
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(d * d, d * d);
    for (int h = 0; h < cutoff; h++) {
        for (int v = 1; v <= cutoff; v++) {
            double c = theta * std::sqrt((h + 1.0) * v);
            gen((h + 1) * d + v - 1, h * d + v) += c;
            gen(h * d + v, (h + 1) * d + v - 1) -= c;
        }
    }
    return gen.exp();
}

/// |<n,m|U_PDC|j,k>|^2 through the n-th derivative of alpha^j (1 + alpha beta)^(n+k-j)
/// at alpha = -sqrt(g-1)/g, beta = sqrt(g-1), expanded term by term.
inline double pdc_prob_derivative(int n, int j, int k, double g) {
    const int big = n + k - j;
    if (big < 0) {
        return 0.0;
    }
    const double alpha = -std::sqrt(g - 1.0) / g;
    const double beta = std::sqrt(g - 1.0);
    double deriv = 0.0;
    for (int i = 0; i <= big; i++) {
        int power = j + i;
        if (power < n) {
            continue;
        }
        deriv += choose(big, i) * std::pow(beta, i) * factorial(power) / factorial(power - n) *
                 std::pow(alpha, power - n);
    }
    return factorial(k) / (factorial(n) * factorial(j) * factorial(big)) / std::pow(g, n - k) * deriv * deriv / g;
}

/// H-mode output distribution for overlap-mixed single photons on both inputs.
inline double p_n_tilde11(int n, double g, double o1, double o2) {
    double pre = std::pow(g - 1.0, n - 1) / std::pow(g, n + 2);
    return pre * ((1 - o1) * (1 - o2) * (g - 1) * g + (1 - o1) * o2 * (g - 1) * (n + 1) + o1 * (1 - o2) * g * n +
                  o1 * o2 * (n + 1 - g) * (n + 1 - g));
}

/// Probability that every detector in `subset` clicks when n photons are each
/// routed to detector d with probability effs[d] (or lost), by explicit enumeration.
inline double click_prob_enumerate(int n, std::span<const double> effs, std::span<const int> subset) {
    const int k = static_cast<int>(effs.size());
    double lost = 1.0;
    for (double e : effs) {
        lost -= e;
    }
    double total = 0.0;
    std::vector<int> route(n, 0);
    std::function<void(int, double)> rec = [&](int photon, double weight) {
        if (photon == n) {
            for (int d : subset) {
                bool hit = false;
                for (int r : route) {
                    hit = hit || r == d;
                }
                if (!hit) {
                    return;
                }
            }
            total += weight;
            return;
        }
        for (int d = 0; d <= k; d++) {
            route[photon] = d;
            rec(photon + 1, weight * (d < k ? effs[d] : lost));
        }
    };
    rec(0, 1.0);
    return total;
}

/// Multimode thermal HBT g2 with threshold detectors from the closed-form
/// no-click probabilities prod_j 1/(1 + x mu_j).
inline double g2_threshold_product(std::span<const double> weights, double mu, double eta) {
    double log_none_a = 0.0;
    double log_none_both = 0.0;
    for (double w : weights) {
        log_none_a -= std::log1p(0.5 * eta * mu * w);
        log_none_both -= std::log1p(eta * mu * w);
    }
    double single = -std::expm1(log_none_a);
    double both = std::expm1(log_none_both) - 2.0 * std::expm1(log_none_a);
    return both / (single * single);
}

/// Normalized Hermite function psi_n(x) by upward recurrence.
inline double hermite_function(int n, double x) {
    double p0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (n == 0) {
        return p0;
    }
    double p1 = std::sqrt(2.0) * x * p0;
    for (int i = 2; i <= n; i++) {
        double p2 = std::sqrt(2.0 / i) * x * p1 - std::sqrt((i - 1.0) / i) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// Single-mode Wigner function of sum_n c_n |n> by direct quadrature of
/// (1/pi) int psi*(x + u) psi(x - u) exp(2 i p u) du.
inline double wigner_quadrature(const std::vector<std::complex<double>> &c, double x, double p) {
    auto psi = [&](double q) {
        std::complex<double> s = 0.0;
        for (size_t n = 0; n < c.size(); n++) {
            s += c[n] * hermite_function(static_cast<int>(n), q);
        }
        return s;
    };
    const int steps = 4000;
    const double lim = 10.0;
    const double h = 2 * lim / steps;
    std::complex<double> acc = 0.0;
    for (int i = 0; i <= steps; i++) {
        double u = -lim + i * h;
        double w = (i == 0 || i == steps) ? 0.5 : 1.0;
        acc += w * std::conj(psi(x + u)) * psi(x - u) * std::exp(std::complex<double>(0.0, 2.0 * p * u));
    }
    return (acc * h).real() / std::numbers::pi;
}

}  // namespace oracle

#endif
