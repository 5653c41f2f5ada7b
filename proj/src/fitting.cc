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

#include "cjlab/fitting.h"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "cjlab/errors.h"
#include "cjlab/fock.h"
#include "cjlab/numeric.h"

namespace cjlab {

namespace {

constexpr int kScanPoints = 41;

bool all_zero(const CoincidenceStats &stats) {
    for (double c : stats.probs) {
        if (c != 0.0) {
            return false;
        }
    }
    return true;
}

// Edge of the region where objective <= target, searched from `inside` towards `outside`.
double profile_edge(const std::function<double(double)> &objective, double target, double inside, double outside) {
    auto h = [&](double t) {
        return objective(t) - target;
    };
    double h_out = h(outside);
    if (h_out <= 0.0) {
        return outside;
    }
    double h_in = h(inside);
    if (h_in >= 0.0) {
        return inside;
    }
    boost::uintmax_t iterations = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(40);
    auto [a, b] = inside < outside
                      ? boost::math::tools::toms748_solve(h, inside, outside, h_in, h_out, tol, iterations)
                      : boost::math::tools::toms748_solve(h, outside, inside, h_out, h_in, tol, iterations);
    if (iterations >= 200) {
        throw ConvergenceError("confidence interval search did not converge");
    }
    return 0.5 * (a + b);
}

}  // namespace

FitResult fit_scalar(
    const std::function<CoincidenceStats(double)> &model,
    const CoincidenceStats &stats,
    double lower,
    double upper,
    const FitOptions &options) {
    require(stats.order() >= 1, "no coincidence data to fit");
    require(lower < upper, "empty parameter range");
    FitResult result;
    result.weighted = options.weighted && stats.has_sigma() && stats.pulses > 0;

    const int orders = stats.order();
    std::vector<double> weights(orders, 1.0);
    if (result.weighted) {
        // Orders with no counts get the one-count Poisson floor.
        double floor = 1.0 / static_cast<double>(stats.pulses);
        for (int m = 0; m < orders; m++) {
            double s = std::max(stats.sigma[m], floor);
            weights[m] = 1.0 / (s * s);
        }
    }
    auto objective = [&](double x) {
        CoincidenceStats predicted = model(x);
        CompensatedSum acc;
        for (int m = 0; m < orders; m++) {
            double r = predicted.probs[m] - stats.probs[m];
            acc += weights[m] * r * r;
        }
        return acc.value();
    };

    // Coarse scan to bracket the global minimum, then Brent inside the bracket.
    std::vector<double> grid(kScanPoints);
    std::vector<double> values(kScanPoints);
    int best = 0;
    for (int i = 0; i < kScanPoints; i++) {
        grid[i] = lower + (upper - lower) * i / (kScanPoints - 1);
        values[i] = objective(grid[i]);
        if (values[i] < values[best]) {
            best = i;
        }
    }
    double v_max = *std::max_element(values.begin(), values.end());
    result.identifiable = v_max - values[best] > 1e-12 * (1.0 + values[best]);

    double lo = grid[std::max(0, best - 1)];
    double hi = grid[std::min(kScanPoints - 1, best + 1)];
    int bits = std::min(52, static_cast<int>(std::ceil(-std::log2(options.tolerance))) + 1);
    boost::uintmax_t iterations = options.max_iterations;
    auto [x, fx] = boost::math::tools::brent_find_minima(objective, lo, hi, bits, iterations);
    if (static_cast<int>(iterations) >= options.max_iterations) {
        throw ConvergenceError("minimizer hit the iteration cap of " + std::to_string(options.max_iterations));
    }
    for (double bound : {lower, upper}) {
        double fb = objective(bound);
        if (fb <= fx) {
            x = bound;
            fx = fb;
        }
    }
    result.value = x;
    result.residual = fx;
    result.iterations = static_cast<int>(iterations);
    result.at_boundary = x - lower <= 10.0 * options.tolerance || upper - x <= 10.0 * options.tolerance;

    double delta = 1.0;
    if (!result.weighted) {
        delta = orders > 1 ? fx / (orders - 1) : 0.0;
    }
    if (delta <= 0.0 || !result.identifiable) {
        result.ci_low = result.identifiable ? x : lower;
        result.ci_high = result.identifiable ? x : upper;
    } else {
        double target = fx + delta;
        result.ci_low = x <= lower ? lower : profile_edge(objective, target, x, lower);
        result.ci_high = x >= upper ? upper : profile_edge(objective, target, x, upper);
    }
    return result;
}

FitResult fit_gain(const CoincidenceStats &stats, double eta, const FitOptions &options) {
    const int orders = stats.order();
    auto model = [&](double g) {
        return coincidence_probs(spdc_dist(g, choose_cutoff(g, 0)), eta, orders);
    };
    return fit_scalar(model, stats, 1.0, 10.0, options);
}

FitResult fit_overlap(const CoincidenceStats &stats, double eta, double g, OverlapMode mode, const FitOptions &options) {
    const int orders = stats.order();
    const int cutoff = choose_cutoff(g, 1);
    // The output is linear in the overlap: (1 - o) C[|0,0>] + o C[|1,0> or |0,1>].
    CoincidenceStats vacuum = coincidence_probs(dist_given_input(0, 0, g, cutoff), eta, orders);
    CoincidenceStats single = mode == OverlapMode::kHInput
                                  ? coincidence_probs(dist_given_input(1, 0, g, cutoff), eta, orders)
                                  : coincidence_probs(dist_given_input(0, 1, g, cutoff), eta, orders);
    auto model = [&](double o) {
        CoincidenceStats c;
        c.probs.resize(orders);
        for (int m = 0; m < orders; m++) {
            c.probs[m] = (1.0 - o) * vacuum.probs[m] + o * single.probs[m];
        }
        return c;
    };
    FitResult r = fit_scalar(model, stats, 0.0, 1.0, options);
    if (all_zero(stats)) {
        r.identifiable = false;
        r.ci_low = 0.0;
        r.ci_high = 1.0;
    }
    return r;
}

Prediction predict_interference(const ExperimentModel &model, int max_order) {
    model.validate();
    Prediction p;
    p.dist = full_output_dist(model, default_cutoff(model));
    p.stats = coincidence_probs(p.dist, model.eta, max_order);
    return p;
}

}  // namespace cjlab
