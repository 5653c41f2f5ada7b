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

#ifndef CJLAB_SPECTRAL_H
#define CJLAB_SPECTRAL_H

#include <Eigen/Dense>
#include <complex>
#include <ostream>
#include <string>
#include <vector>

namespace cjlab {

enum class PhaseMatching {
    kSinc,
    /// exp(-0.193 x^2), the Gaussian with the same width as sinc(x).
    kGaussian,
};

struct JsaParams {
    /// Pump amplitude bandwidth, in the frequency unit of the axes.
    double pump_sigma = 1.0;
    /// Phase-matching length parameter L in x = (L/2)(w_s - slope * w_i).
    double pm_length = 4.0;
    double gvm_slope = 0.5;
    int grid_size = 256;
    /// Grid half-width in units of the larger marginal standard deviation.
    double span_sigmas = 14.0;
    PhaseMatching shape = PhaseMatching::kSinc;
};

/// Complex amplitude on a uniform (idler, signal) frequency grid.
/// Rows index the idler detuning, columns the signal detuning.
struct JointSpectralAmplitude {
    Eigen::MatrixXcd grid;
    double idler0 = 0.0;
    double d_idler = 1.0;
    double signal0 = 0.0;
    double d_signal = 1.0;
    std::string unit = "rad/ps";
    double pump_sigma = 0.0;
    double pm_length = 0.0;
    double gvm_slope = 0.0;
    /// Fraction of the intensity kept by the last filter, before renormalization.
    double transmitted_fraction = 1.0;
    /// The last filter kept less than 1e-3 of the intensity.
    bool low_transmission = false;

    double idler(int row) const {
        return idler0 + row * d_idler;
    }
    double signal(int col) const {
        return signal0 + col * d_signal;
    }
    void normalize();
};

struct SchmidtSpectrum {
    std::vector<double> coefficients;
    double purity = 0.0;
};

/// Pump envelope exp(-(w_i + w_s)^2 / (2 sigma^2)) times phase matching PM(x),
/// x = (L/2)(w_s - slope * w_i), on a centered grid_size^2 grid. Normalized.
JointSpectralAmplitude build_jsa(const JsaParams &params);
JointSpectralAmplitude build_jsa(
    double pump_sigma, double pm_length, double gvm_slope, int grid_size, double span_sigmas,
    PhaseMatching shape = PhaseMatching::kSinc);

/// Slope at which the Gaussian phase-matching model factorizes.
double separable_gvm_slope(double pump_sigma, double pm_length);

/// Correlation rho of the Gaussian model; its purity is sqrt(1 - rho^2).
double gaussian_correlation(double pump_sigma, double pm_length, double gvm_slope);

enum class FilterMode { kIdler, kSignal, kBoth };

/// Top-hat window |w - center| <= width / 2 on the chosen axes, then renormalized.
JointSpectralAmplitude apply_filter(const JointSpectralAmplitude &jsa, double center, double width, FilterMode mode);

/// Singular values of the grid, normalized so sum c_j^2 = 1.
SchmidtSpectrum schmidt_purity(const JointSpectralAmplitude &jsa);

/// Purity from the heralded-arm g2 with ideal detectors: g2 - 1.
double purity_from_g2(double g2);

/// Purity from g2 measured with threshold detectors at mean photon number mu.
double purity_from_g2_threshold(double g2, double mean_photons, double eta = 1.0);

/// CSV with columns omega_i, omega_s, re, im.
void write_jsa_csv(const JointSpectralAmplitude &jsa, std::ostream &out);
JointSpectralAmplitude read_jsa_csv(std::istream &in);
void write_jsa_grid(const JointSpectralAmplitude &jsa, std::ostream &out);
JointSpectralAmplitude read_jsa_grid(std::istream &in);

}  // namespace cjlab

#endif
