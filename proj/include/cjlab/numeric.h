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

#ifndef CJLAB_NUMERIC_H
#define CJLAB_NUMERIC_H

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cjlab {

/// Neumaier compensated summation.
class CompensatedSum {
   public:
    void add(double x);
    CompensatedSum &operator+=(double x) {
        add(x);
        return *this;
    }
    double value() const {
        return sum_ + compensation_;
    }

   private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

double compensated_total(std::span<const double> values);

double log_factorial(int n);
double log_binomial(int n, int k);
/// Binomial coefficient as a double; exact for results below 2^53.
double binomial(int n, int k);

/// Sum of f(n) for n >= start, stopping once terms are below `rel_tol` of the
/// running total and no longer increasing. Intended for tails of
/// polynomial-times-geometric series.
double series_tail(const std::function<double(int)> &f, int start, double rel_tol = 1e-18, int max_terms = 1000000);

}  // namespace cjlab

#endif
