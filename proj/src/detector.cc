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

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <string>

#include "cjlab/errors.h"
#include "cjlab/numeric.h"

namespace cjlab {

namespace {

constexpr double kEffSlack = 1e-12;

// Photon-number distribution of independent thermal modes with the given means,
// truncated where the remaining mass is below 1e-12.
std::vector<double> multimode_thermal(std::span<const double> means) {
    for (int limit = 16;; limit *= 2) {
        std::vector<double> total(limit + 1, 0.0);
        total[0] = 1.0;
        for (double mu : means) {
            if (mu == 0.0) {
                continue;
            }
            std::vector<double> mode(limit + 1);
            double q = mu / (1.0 + mu);
            for (int n = 0; n <= limit; n++) {
                mode[n] = std::pow(q, n) / (1.0 + mu);
            }
            std::vector<double> next(limit + 1, 0.0);
            for (int a = 0; a <= limit; a++) {
                if (total[a] == 0.0) {
                    continue;
                }
                for (int b = 0; a + b <= limit; b++) {
                    next[a + b] += total[a] * mode[b];
                }
            }
            total = std::move(next);
        }
        if (compensated_total(total) >= 1.0 - 1e-12 || limit >= (1 << 20)) {
            return total;
        }
    }
}

}  // namespace

DetectorArray DetectorArray::uniform(int count, double total_efficiency, int dead_pulses) {
    require(count >= 1, "detector count must be >= 1");
    require(total_efficiency >= 0.0 && total_efficiency <= 1.0, "total efficiency must lie in [0, 1]");
    DetectorArray d;
    d.efficiencies.assign(count, total_efficiency / count);
    d.dead_pulses = dead_pulses;
    d.validate();
    return d;
}

int DetectorArray::dead_pulses_from_times(double dead_time, double pulse_period) {
    require(dead_time >= 0.0 && pulse_period > 0.0, "dead time must be >= 0 and pulse period > 0");
    return static_cast<int>(std::floor(dead_time / pulse_period));
}

double DetectorArray::total_efficiency() const {
    return compensated_total(efficiencies);
}

void DetectorArray::validate() const {
    require(!efficiencies.empty(), "detector array is empty");
    for (double e : efficiencies) {
        require(e >= 0.0 && e <= 1.0, "detector efficiency must lie in [0, 1]");
    }
    require(total_efficiency() <= 1.0 + kEffSlack, "detector efficiencies sum above 1");
    require(dead_pulses >= 0, "dead_pulses must be >= 0");
}

void CoincidenceStats::attach_poisson_sigma() {
    require(pulses > 0, "pulse count must be positive to attach sigma");
    sigma.resize(probs.size());
    for (size_t m = 0; m < probs.size(); m++) {
        double c = probs[m];
        sigma[m] = std::sqrt(std::max(0.0, c * (1.0 - c)) / static_cast<double>(pulses));
    }
}

void CoincidenceStats::validate() const {
    for (size_t m = 0; m < probs.size(); m++) {
        require(probs[m] >= 0.0 && probs[m] <= 1.0, "C_" + std::to_string(m + 1) + " outside [0, 1]");
    }
    require(sigma.empty() || sigma.size() == probs.size(), "sigma length differs from probs");
    require(counts.empty() || counts.size() == probs.size(), "counts length differs from probs");
    require(pulses >= 0, "pulse count must be >= 0");
}

double click_prob_subset(int n, std::span<const double> subset_effs) {
    require(n >= 0, "photon number must be >= 0");
    require(subset_effs.size() < 31, "subset too large");
    require(compensated_total(subset_effs) <= 1.0 + kEffSlack, "subset efficiencies sum above 1");
    const uint32_t size = static_cast<uint32_t>(subset_effs.size());
    CompensatedSum acc;
    for (uint32_t mask = 0; mask < (1u << size); mask++) {
        CompensatedSum eff;
        int bits = 0;
        for (uint32_t l = 0; l < size; l++) {
            if (mask & (1u << l)) {
                eff += subset_effs[l];
                bits++;
            }
        }
        double miss = std::max(0.0, 1.0 - eff.value());
        double term = std::pow(miss, n);
        acc += (bits % 2 == 0) ? term : -term;
    }
    return acc.value();
}

double equal_eta_click_prob(int n, int m, double eta) {
    require(n >= 0 && m >= 0, "photon number and order must be >= 0");
    require(m * eta <= 1.0 + kEffSlack, "m * eta must be <= 1");
    // hit[k]: probability that exactly k of the m detectors have fired so far.
    std::vector<double> hit(m + 1, 0.0);
    hit[0] = 1.0;
    for (int photon = 0; photon < n; photon++) {
        for (int k = m; k >= 0; k--) {
            double stay = std::max(0.0, 1.0 - (m - k) * eta);
            double next = hit[k] * stay;
            if (k > 0) {
                next += hit[k - 1] * (m - k + 1) * eta;
            }
            hit[k] = next;
        }
    }
    return hit[m];
}

CoincidenceStats coincidence_probs(const PhotonNumberDist &dist, double eta, int max_order) {
    require(max_order >= 1, "coincidence order must be >= 1");
    require(eta >= 0.0 && max_order * eta <= 1.0 + kEffSlack,
            "M * eta must be <= 1, got M=" + std::to_string(max_order) + " eta=" + std::to_string(eta));
    CoincidenceStats stats;
    stats.probs.assign(max_order, 0.0);
    for (int m = 1; m <= max_order; m++) {
        std::vector<double> hit(m + 1, 0.0);
        hit[0] = 1.0;
        CompensatedSum acc;
        for (int n = 0; n <= dist.cutoff(); n++) {
            if (n >= m) {
                acc += dist.probs[n] * hit[m];
            }
            for (int k = m; k >= 0; k--) {
                double next = hit[k] * std::max(0.0, 1.0 - (m - k) * eta);
                if (k > 0) {
                    next += hit[k - 1] * (m - k + 1) * eta;
                }
                hit[k] = next;
            }
        }
        stats.probs[m - 1] = std::max(0.0, acc.value());
    }
    return stats;
}

DeadtimeCorrection deadtime_correct(double p_star, int n_d) {
    require(n_d >= 0, "n_d must be >= 0");
    require(p_star >= 0.0 && p_star * (1.0 + n_d) < 1.0,
            "p* must lie in [0, 1/(1+n_d)), got " + std::to_string(p_star));
    DeadtimeCorrection c;
    c.lambda = 1.0 - n_d * p_star;
    c.p = p_star / c.lambda;
    return c;
}

KlyshkoEfficiency klyshko_efficiency(double n_h, double n_v, double n_hv) {
    require(n_h > 0.0 && n_v > 0.0, "singles rates must be > 0");
    require(n_hv >= 0.0, "coincidence rate must be >= 0");
    require(n_hv <= std::min(n_h, n_v), "coincidence rate exceeds a singles rate");
    KlyshkoEfficiency k;
    k.eta_v = n_hv / n_h;
    k.eta_h = n_hv / n_v;
    return k;
}

double g2_threshold(std::span<const double> schmidt_weights, double mean_photons, double eta) {
    require(!schmidt_weights.empty(), "schmidt weights are empty");
    require(std::abs(compensated_total(schmidt_weights) - 1.0) <= 1e-9, "schmidt weights must sum to 1");
    require(mean_photons > 0.0, "mean photon number must be > 0");
    require(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
    std::vector<double> means;
    for (double w : schmidt_weights) {
        require(w >= 0.0, "schmidt weights must be >= 0");
        means.push_back(w * mean_photons);
    }
    std::vector<double> p = multimode_thermal(means);

    // Per photon: arm a with eta/2, arm b with eta/2, lost otherwise.
    const double log_miss_one = std::log1p(-eta / 2.0);
    const double log_miss_both = eta == 1.0 ? -INFINITY : std::log1p(-eta);
    CompensatedSum single;
    CompensatedSum both;
    for (size_t n = 1; n < p.size(); n++) {
        double a = std::expm1(n * log_miss_one);   // x^n - 1
        double b = std::expm1(n * log_miss_both);  // y^n - 1
        single += p[n] * -a;
        if (n >= 2) {
            // 1 - 2 x^n + y^n
            both += p[n] * (b - 2.0 * a);
        }
    }
    double c = single.value();
    return both.value() / (c * c);
}

std::vector<double> geometric_schmidt_weights(double purity) {
    require(purity > 0.0 && purity <= 1.0, "purity must lie in (0, 1]");
    double l = (1.0 - purity) / (1.0 + purity);
    std::vector<double> w;
    for (double v = 1.0 - l; v >= 1e-17 && w.size() < 100000; v *= l) {
        w.push_back(v);
        if (l == 0.0) {
            break;
        }
    }
    return w;
}

double threshold_corrected_purity(double g2, double mean_photons, double eta) {
    require(mean_photons > 0.0, "mean photon number must be > 0");
    auto f = [&](double purity) {
        std::vector<double> w = geometric_schmidt_weights(purity);
        return g2_threshold(w, mean_photons, eta) - g2;
    };
    const double lo = 1e-3;
    const double hi = 1.0;
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_hi == 0.0) {
        return hi;
    }
    require(f_lo <= 0.0 && f_hi >= 0.0, "g2 = " + std::to_string(g2) + " is outside the reachable range [" +
                                            std::to_string(f_lo + g2) + ", " + std::to_string(f_hi + g2) + "]");
    boost::uintmax_t iterations = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(40);
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, tol, iterations);
    if (iterations >= 200) {
        throw ConvergenceError("purity root finding did not converge");
    }
    return 0.5 * (a + b);
}

}  // namespace cjlab
