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

#ifndef CJLAB_INVERSION_H
#define CJLAB_INVERSION_H

#include <cstdint>
#include <utility>
#include <vector>

#include "cjlab/detector.h"
#include "cjlab/distributions.h"

namespace cjlab {

/// Integer polynomial in eta, coefficient i multiplies eta^i.
using IntPolynomial = std::vector<int64_t>;

/// Multipliers of C_1..C_order in the truncated P_1 expansion at efficiency eta.
///
/// coeffs[m-1] = p_m(eta) / (m! eta^m) with integer polynomials p_m.
struct InversionCoefficients {
    int order = 0;
    double eta = 0.0;
    std::vector<double> coeffs;
};

/// Numerator polynomials p_1..p_max_order generated from the C_m <-> P_n system.
std::vector<IntPolynomial> generate_p1_numerators(int max_order);

/// The hand-written numerators for orders 1..6.
const std::vector<IntPolynomial> &tabulated_p1_numerators();

InversionCoefficients p1_coefficients(double eta, int order);

struct Estimate {
    double value = 0.0;
    /// Linear propagation of the stats' sigma; zero when the stats carry none.
    double sigma = 0.0;
};

/// P_1 from the first m coincidence orders.
Estimate p1_truncated(const CoincidenceStats &stats, double eta, int m);

struct PnSolution {
    PhotonNumberDist dist;
    std::vector<double> sigma;
    /// eta < 0.2 with cutoff >= 5: the diagonal m! eta^m amplifies noise strongly.
    bool ill_conditioned = false;
    /// Some component lies more than 5 sigma below zero.
    bool negative = false;
    std::vector<int> negative_components;
};

/// Solves C = A(eta) P for P_1..P_cutoff assuming P_n = 0 beyond the cutoff.
/// Values are returned unclipped; P_0 = 1 - sum.
PnSolution pn_solve(const CoincidenceStats &stats, double eta, int cutoff);

/// (m, P_1 estimate from m orders) for m = 1..max_order on exact coincidences.
std::vector<std::pair<int, double>> truncation_scan(const PhotonNumberDist &dist, double eta, int max_order = 6);

}  // namespace cjlab

#endif
