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

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "cjlab/errors.h"
#include "cjlab/numeric.h"

namespace cjlab {

namespace {

int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw DomainError("inversion coefficient overflow; order too large");
    }
    return r;
}

int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw DomainError("inversion coefficient overflow; order too large");
    }
    return r;
}

// Stirling numbers of the second kind S(n, k), 0 <= k <= n <= max_n.
std::vector<std::vector<int64_t>> stirling2(int max_n) {
    std::vector<std::vector<int64_t>> s(max_n + 1, std::vector<int64_t>(max_n + 1, 0));
    s[0][0] = 1;
    for (int n = 1; n <= max_n; n++) {
        for (int k = 1; k <= n; k++) {
            s[n][k] = checked_add(checked_mul(k, s[n - 1][k]), s[n - 1][k - 1]);
        }
    }
    return s;
}

int64_t binomial_int(int n, int k) {
    int64_t r = 1;
    for (int i = 1; i <= k; i++) {
        r = checked_mul(r, n - k + i) / i;
    }
    return r;
}

double evaluate(const IntPolynomial &p, double x) {
    double r = 0.0;
    for (size_t i = p.size(); i-- > 0;) {
        r = r * x + static_cast<double>(p[i]);
    }
    return r;
}

}  // namespace

std::vector<IntPolynomial> generate_p1_numerators(int max_order) {
    require(max_order >= 1, "order must be >= 1");
    auto s = stirling2(max_order);
    // A_{k,n} = k! eta^k Q_{k,n}(eta),
    // Q_{k,n} = sum_{i=k}^{n} C(n,i) (-1)^(i+k) S(i,k) eta^(i-k).
    auto q = [&](int k, int n) {
        IntPolynomial poly(n - k + 1, 0);
        for (int i = k; i <= n; i++) {
            int64_t c = checked_mul(binomial_int(n, i), s[i][k]);
            poly[i - k] = (i + k) % 2 == 0 ? c : -c;
        }
        return poly;
    };
    // sum_k p_k Q_{k,n} = delta_{n,1}
    std::vector<IntPolynomial> p{{1}};
    for (int m = 2; m <= max_order; m++) {
        IntPolynomial pm(m, 0);
        for (int k = 1; k < m; k++) {
            IntPolynomial qk = q(k, m);
            const IntPolynomial &pk = p[k - 1];
            for (size_t a = 0; a < pk.size(); a++) {
                for (size_t b = 0; b < qk.size(); b++) {
                    pm[a + b] = checked_add(pm[a + b], -checked_mul(pk[a], qk[b]));
                }
            }
        }
        p.push_back(std::move(pm));
    }
    return p;
}

const std::vector<IntPolynomial> &tabulated_p1_numerators() {
    static const std::vector<IntPolynomial> table{
        {1},
        {-2, 1},
        {3, -6, 2},
        {-4, 18, -22, 6},
        {5, -40, 105, -100, 24},
        {-6, 75, -340, 675, -548, 120},
    };
    return table;
}

InversionCoefficients p1_coefficients(double eta, int order) {
    require(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
    require(order >= 1, "order must be >= 1");
    const auto &table = tabulated_p1_numerators();
    std::vector<IntPolynomial> generated;
    if (order > static_cast<int>(table.size())) {
        generated = generate_p1_numerators(order);
    }
    InversionCoefficients c;
    c.order = order;
    c.eta = eta;
    for (int m = 1; m <= order; m++) {
        const IntPolynomial &p = m <= static_cast<int>(table.size()) ? table[m - 1] : generated[m - 1];
        double denom = std::exp(log_factorial(m)) * std::pow(eta, m);
        c.coeffs.push_back(evaluate(p, eta) / denom);
    }
    return c;
}

Estimate p1_truncated(const CoincidenceStats &stats, double eta, int m) {
    require(m >= 1, "truncation order must be >= 1");
    if (m > stats.order()) {
        throw DomainError(
            "insufficient coincidence orders: need " + std::to_string(m) + ", have " + std::to_string(stats.order()));
    }
    InversionCoefficients c = p1_coefficients(eta, m);
    CompensatedSum value;
    CompensatedSum var;
    for (int i = 0; i < m; i++) {
        value += c.coeffs[i] * stats.probs[i];
        if (stats.has_sigma()) {
            double s = c.coeffs[i] * stats.sigma[i];
            var += s * s;
        }
    }
    return {value.value(), std::sqrt(var.value())};
}

PnSolution pn_solve(const CoincidenceStats &stats, double eta, int cutoff) {
    require(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
    require(cutoff >= 1, "cutoff must be >= 1");
    if (cutoff > stats.order()) {
        throw DomainError("cutoff " + std::to_string(cutoff) + " exceeds the available coincidence orders (" +
                          std::to_string(stats.order()) + ")");
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cutoff, cutoff);
    for (int m = 1; m <= cutoff; m++) {
        for (int n = m; n <= cutoff; n++) {
            a(m - 1, n - 1) = equal_eta_click_prob(n, m, eta);
        }
    }
    Eigen::VectorXd c(cutoff);
    for (int m = 0; m < cutoff; m++) {
        c[m] = stats.probs[m];
    }
    Eigen::VectorXd p = a.triangularView<Eigen::Upper>().solve(c);

    PnSolution sol;
    sol.ill_conditioned = eta < 0.2 && cutoff >= 5;
    sol.dist.probs.resize(cutoff + 1);
    CompensatedSum sum;
    for (int n = 1; n <= cutoff; n++) {
        sol.dist.probs[n] = p[n - 1];
        sum += p[n - 1];
    }
    sol.dist.probs[0] = 1.0 - sum.value();
    sol.sigma.assign(cutoff + 1, 0.0);
    if (stats.has_sigma()) {
        Eigen::MatrixXd inv = a.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(cutoff, cutoff));
        Eigen::VectorXd s2(cutoff);
        for (int m = 0; m < cutoff; m++) {
            s2[m] = stats.sigma[m] * stats.sigma[m];
        }
        Eigen::MatrixXd cov = inv * s2.asDiagonal() * inv.transpose();
        for (int n = 1; n <= cutoff; n++) {
            sol.sigma[n] = std::sqrt(cov(n - 1, n - 1));
        }
        sol.sigma[0] = std::sqrt(std::max(0.0, cov.sum()));
    }
    for (int n = 0; n <= cutoff; n++) {
        if (sol.sigma[n] > 0.0 && sol.dist.probs[n] < -5.0 * sol.sigma[n]) {
            sol.negative = true;
            sol.negative_components.push_back(n);
        }
    }
    return sol;
}

std::vector<std::pair<int, double>> truncation_scan(const PhotonNumberDist &dist, double eta, int max_order) {
    CoincidenceStats stats = coincidence_probs(dist, eta, max_order);
    std::vector<std::pair<int, double>> out;
    for (int m = 1; m <= max_order; m++) {
        out.emplace_back(m, p1_truncated(stats, eta, m).value);
    }
    return out;
}

}  // namespace cjlab
