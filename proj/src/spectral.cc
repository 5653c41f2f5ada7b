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

#include "cjlab/spectral.h"

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "cjlab/detector.h"
#include "cjlab/errors.h"
#include "cjlab/grid_io.h"
#include "cjlab/numeric.h"

namespace cjlab {

namespace {

// sinc(x)^2 and exp(-kSincGauss x^2) have the same width.
constexpr double kSincGauss = 0.193;
constexpr double kLowTransmission = 1e-3;

struct Quadratic {
    double a_ii;
    double a_ss;
    double a_is;
};

// Exponent -(a_ii w_i^2 + a_is w_i w_s + a_ss w_s^2) of the Gaussian model.
Quadratic gaussian_form(double sigma, double length, double slope) {
    double k = kSincGauss * length * length;
    Quadratic q;
    q.a_ii = 1.0 / (2.0 * sigma * sigma) + k * slope * slope / 4.0;
    q.a_ss = 1.0 / (2.0 * sigma * sigma) + k / 4.0;
    q.a_is = 1.0 / (sigma * sigma) - k * slope / 2.0;
    return q;
}

double sinc(double x) {
    return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}

}  // namespace

void JointSpectralAmplitude::normalize() {
    double norm = grid.norm();
    require(norm > 0.0, "joint spectral amplitude is identically zero");
    grid /= norm;
}

JointSpectralAmplitude build_jsa(const JsaParams &params) {
    return build_jsa(
        params.pump_sigma, params.pm_length, params.gvm_slope, params.grid_size, params.span_sigmas, params.shape);
}

JointSpectralAmplitude build_jsa(
    double pump_sigma, double pm_length, double gvm_slope, int grid_size, double span_sigmas, PhaseMatching shape) {
    require(pump_sigma > 0.0, "pump_sigma must be > 0");
    require(pm_length > 0.0, "pm_length must be > 0");
    require(gvm_slope > 0.0, "gvm_slope must be > 0");
    require(span_sigmas > 0.0, "span_sigmas must be > 0");
    require(grid_size >= 64, "grid_size must be >= 64");

    // |S|^2 ~ exp(-2 w^T A w): marginal variances from (4 A)^-1.
    Quadratic q = gaussian_form(pump_sigma, pm_length, gvm_slope);
    Eigen::Matrix2d a;
    a << q.a_ii, q.a_is / 2.0, q.a_is / 2.0, q.a_ss;
    Eigen::Matrix2d cov = (4.0 * a).inverse();
    double half = span_sigmas * std::sqrt(std::max(cov(0, 0), cov(1, 1)));

    JointSpectralAmplitude jsa;
    jsa.pump_sigma = pump_sigma;
    jsa.pm_length = pm_length;
    jsa.gvm_slope = gvm_slope;
    jsa.idler0 = -half;
    jsa.signal0 = -half;
    jsa.d_idler = 2.0 * half / (grid_size - 1);
    jsa.d_signal = jsa.d_idler;
    jsa.grid.resize(grid_size, grid_size);
    for (int r = 0; r < grid_size; r++) {
        double wi = jsa.idler(r);
        for (int c = 0; c < grid_size; c++) {
            double ws = jsa.signal(c);
            double sum = wi + ws;
            double x = 0.5 * pm_length * (ws - gvm_slope * wi);
            double pm = shape == PhaseMatching::kSinc ? sinc(x) : std::exp(-kSincGauss * x * x);
            jsa.grid(r, c) = std::exp(-sum * sum / (2.0 * pump_sigma * pump_sigma)) * pm;
        }
    }
    jsa.normalize();
    return jsa;
}

double separable_gvm_slope(double pump_sigma, double pm_length) {
    require(pump_sigma > 0.0 && pm_length > 0.0, "pump_sigma and pm_length must be > 0");
    return 2.0 / (kSincGauss * pm_length * pm_length * pump_sigma * pump_sigma);
}

double gaussian_correlation(double pump_sigma, double pm_length, double gvm_slope) {
    Quadratic q = gaussian_form(pump_sigma, pm_length, gvm_slope);
    return -q.a_is / (2.0 * std::sqrt(q.a_ii * q.a_ss));
}

JointSpectralAmplitude apply_filter(const JointSpectralAmplitude &jsa, double center, double width, FilterMode mode) {
    require(width > 0.0, "filter width must be > 0");
    auto pass = [&](double w) {
        return std::abs(w - center) <= width / 2.0;
    };
    const int rows = static_cast<int>(jsa.grid.rows());
    const int cols = static_cast<int>(jsa.grid.cols());
    std::vector<bool> row_pass(rows, true);
    std::vector<bool> col_pass(cols, true);
    bool any_row = false;
    bool any_col = false;
    for (int r = 0; r < rows; r++) {
        if (mode != FilterMode::kSignal) {
            row_pass[r] = pass(jsa.idler(r));
        }
        any_row = any_row || row_pass[r];
    }
    for (int c = 0; c < cols; c++) {
        if (mode != FilterMode::kIdler) {
            col_pass[c] = pass(jsa.signal(c));
        }
        any_col = any_col || col_pass[c];
    }
    if (!any_row || !any_col) {
        throw DomainError("filter passband contains no grid points");
    }
    JointSpectralAmplitude out = jsa;
    for (int r = 0; r < rows; r++) {
        for (int c = 0; c < cols; c++) {
            if (!row_pass[r] || !col_pass[c]) {
                out.grid(r, c) = 0.0;
            }
        }
    }
    double before = jsa.grid.squaredNorm();
    double after = out.grid.squaredNorm();
    out.transmitted_fraction = before > 0.0 ? after / before : 0.0;
    out.low_transmission = out.transmitted_fraction < kLowTransmission;
    if (after > 0.0) {
        out.normalize();
    }
    return out;
}

SchmidtSpectrum schmidt_purity(const JointSpectralAmplitude &jsa) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(jsa.grid);
    Eigen::VectorXd s = svd.singularValues();
    double norm = s.norm();
    require(norm > 0.0, "joint spectral amplitude is identically zero");
    SchmidtSpectrum out;
    CompensatedSum purity;
    for (int i = 0; i < s.size(); i++) {
        double c = s[i] / norm;
        out.coefficients.push_back(c);
        purity += c * c * c * c;
    }
    out.purity = purity.value();
    return out;
}

double purity_from_g2(double g2) {
    require(g2 >= 1.0 && g2 <= 2.0, "g2 must lie in [1, 2], got " + std::to_string(g2));
    return g2 - 1.0;
}

double purity_from_g2_threshold(double g2, double mean_photons, double eta) {
    require(g2 >= 1.0 && g2 <= 2.0, "g2 must lie in [1, 2], got " + std::to_string(g2));
    return threshold_corrected_purity(g2, mean_photons, eta);
}

void write_jsa_csv(const JointSpectralAmplitude &jsa, std::ostream &out) {
    out << "omega_i,omega_s,re,im\r\n";
    for (int r = 0; r < jsa.grid.rows(); r++) {
        for (int c = 0; c < jsa.grid.cols(); c++) {
            out << format_double(jsa.idler(r)) << ',' << format_double(jsa.signal(c)) << ','
                << format_double(jsa.grid(r, c).real()) << ',' << format_double(jsa.grid(r, c).imag()) << "\r\n";
        }
    }
}

JointSpectralAmplitude read_jsa_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("JSA CSV is empty");
    }
    std::vector<std::array<double, 4>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::array<double, 4> v{};
        std::stringstream ss(line);
        std::string cell;
        for (int i = 0; i < 4; i++) {
            if (!std::getline(ss, cell, ',')) {
                throw IoError("JSA CSV row has fewer than 4 columns: " + line);
            }
            v[i] = std::stod(cell);
        }
        rows.push_back(v);
    }
    if (rows.size() < 4) {
        throw IoError("JSA CSV has too few rows");
    }
    size_t cols = 1;
    while (cols < rows.size() && rows[cols][0] == rows[0][0]) {
        cols++;
    }
    if (rows.size() % cols != 0 || cols < 2) {
        throw IoError("JSA CSV is not a full rectangular grid");
    }
    size_t nrows = rows.size() / cols;
    JointSpectralAmplitude jsa;
    jsa.grid.resize(nrows, cols);
    jsa.idler0 = rows[0][0];
    jsa.signal0 = rows[0][1];
    jsa.d_signal = rows[1][1] - rows[0][1];
    jsa.d_idler = nrows > 1 ? rows[cols][0] - rows[0][0] : 1.0;
    for (size_t r = 0; r < nrows; r++) {
        for (size_t c = 0; c < cols; c++) {
            const auto &v = rows[r * cols + c];
            jsa.grid(r, c) = std::complex<double>(v[2], v[3]);
        }
    }
    return jsa;
}

void write_jsa_grid(const JointSpectralAmplitude &jsa, std::ostream &out) {
    GridData g;
    g.dtype = GridDtype::kComplex128;
    g.rows = static_cast<uint32_t>(jsa.grid.rows());
    g.cols = static_cast<uint32_t>(jsa.grid.cols());
    g.x0 = jsa.idler0;
    g.dx = jsa.d_idler;
    g.y0 = jsa.signal0;
    g.dy = jsa.d_signal;
    g.data.reserve(2 * g.rows * g.cols);
    for (uint32_t r = 0; r < g.rows; r++) {
        for (uint32_t c = 0; c < g.cols; c++) {
            g.data.push_back(jsa.grid(r, c).real());
            g.data.push_back(jsa.grid(r, c).imag());
        }
    }
    write_grid(g, out);
}

JointSpectralAmplitude read_jsa_grid(std::istream &in) {
    GridData g = read_grid(in);
    if (g.dtype != GridDtype::kComplex128) {
        throw IoError("JSA grid must hold complex data");
    }
    JointSpectralAmplitude jsa;
    jsa.grid.resize(g.rows, g.cols);
    jsa.idler0 = g.x0;
    jsa.d_idler = g.dx;
    jsa.signal0 = g.y0;
    jsa.d_signal = g.dy;
    for (uint32_t r = 0; r < g.rows; r++) {
        for (uint32_t c = 0; c < g.cols; c++) {
            size_t i = 2 * (static_cast<size_t>(r) * g.cols + c);
            jsa.grid(r, c) = std::complex<double>(g.data[i], g.data[i + 1]);
        }
    }
    return jsa;
}

}  // namespace cjlab
