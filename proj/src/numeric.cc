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

#include "cjlab/numeric.h"

#include <cmath>
#include <limits>

namespace cjlab {

void CompensatedSum::add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

double compensated_total(std::span<const double> values) {
    CompensatedSum acc;
    for (double v : values) {
        acc += v;
    }
    return acc.value();
}

double log_factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(1024);
        for (size_t i = 0; i < t.size(); i++) {
            t[i] = std::lgamma(static_cast<double>(i) + 1.0);
        }
        return t;
    }();
    if (n >= 0 && static_cast<size_t>(n) < table.size()) {
        return table[n];
    }
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) {
        return -std::numeric_limits<double>::infinity();
    }
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double result = 1.0;
    for (int i = 1; i <= k; i++) {
        result = result * (n - k + i) / i;
    }
    return std::round(result);
}

double series_tail(const std::function<double(int)> &f, int start, double rel_tol, int max_terms) {
    CompensatedSum acc;
    double previous = std::numeric_limits<double>::infinity();
    int zero_run = 0;
    for (int i = 0; i < max_terms; i++) {
        double term = f(start + i);
        acc += term;
        zero_run = term == 0.0 ? zero_run + 1 : 0;
        if (zero_run >= 64) {
            break;
        }
        if (acc.value() > 0.0 && term <= previous && term <= rel_tol * acc.value()) {
            break;
        }
        previous = term;
    }
    return acc.value();
}

}  // namespace cjlab
