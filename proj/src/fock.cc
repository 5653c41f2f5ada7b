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
#include <limits>
#include <numbers>
#include <string>

#include "cjlab/errors.h"
#include "cjlab/numeric.h"

namespace cjlab {

namespace {

constexpr double kLeakageLimit = 1e-6;

// log(x^e) with 0^0 = 1.
double log_pow(double x, int e) {
    if (e == 0) {
        return 0.0;
    }
    if (x == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    return e * std::log(x);
}

}  // namespace

SqueezeParams SqueezeParams::from_gain(double gain) {
    require(gain >= 1.0, "gain must be >= 1, got " + std::to_string(gain));
    SqueezeParams p;
    p.gain = gain;
    p.squeeze = std::acosh(std::sqrt(gain));
    return p;
}

SqueezeParams SqueezeParams::from_squeeze(double squeeze) {
    require(squeeze >= 0.0, "squeeze must be >= 0");
    SqueezeParams p;
    p.squeeze = squeeze;
    double c = std::cosh(squeeze);
    p.gain = c * c;
    return p;
}

double SqueezeParams::theta_for_transmittance(double transmittance) {
    require(transmittance >= 0.0 && transmittance <= 1.0, "transmittance must lie in [0, 1]");
    return std::acos(std::sqrt(transmittance));
}

double SqueezeParams::transmittance() const {
    double c = std::cos(theta);
    return c * c;
}

void SqueezeParams::validate() const {
    require(gain >= 1.0, "gain must be >= 1");
    require(squeeze >= 0.0, "squeeze must be >= 0");
    double c = std::cosh(squeeze);
    require(std::abs(c * c - gain) <= 1e-12 * gain, "gain and squeeze disagree: g != cosh^2(r)");
}

TwoModeFockState::TwoModeFockState(int cutoff) : cutoff_(cutoff) {
    require(cutoff >= 0, "cutoff must be >= 0");
    amplitudes_.assign(static_cast<size_t>(dim()) * dim(), Complex{0.0, 0.0});
}

TwoModeFockState TwoModeFockState::basis(int cutoff, int n_h, int n_v) {
    require(n_h >= 0 && n_v >= 0 && n_h <= cutoff && n_v <= cutoff, "basis state outside the cutoff");
    TwoModeFockState s(cutoff);
    s(n_h, n_v) = 1.0;
    return s;
}

void TwoModeFockState::set_tail_bound(double tail) {
    require(tail >= 0.0, "tail_bound must be >= 0");
    tail_bound_ = tail;
}

double TwoModeFockState::norm_squared() const {
    CompensatedSum acc;
    for (const auto &a : amplitudes_) {
        acc += std::norm(a);
    }
    return acc.value();
}

bool TwoModeFockState::is_normalized(double tol) const {
    return std::abs(norm_squared() + tail_bound_ - 1.0) <= tol;
}

std::vector<double> TwoModeFockState::h_marginal() const {
    std::vector<double> out(dim(), 0.0);
    for (int a = 0; a < dim(); a++) {
        CompensatedSum acc;
        for (int b = 0; b < dim(); b++) {
            acc += probability(a, b);
        }
        out[a] = acc.value();
    }
    return out;
}

std::vector<double> TwoModeFockState::v_marginal() const {
    std::vector<double> out(dim(), 0.0);
    for (int b = 0; b < dim(); b++) {
        CompensatedSum acc;
        for (int a = 0; a < dim(); a++) {
            acc += probability(a, b);
        }
        out[b] = acc.value();
    }
    return out;
}

double TwoModeFockState::top_layer_population(int layers) const {
    int first = std::max(0, cutoff_ - layers + 1);
    CompensatedSum acc;
    for (int a = 0; a < dim(); a++) {
        for (int b = 0; b < dim(); b++) {
            if (a >= first || b >= first) {
                acc += probability(a, b);
            }
        }
    }
    return acc.value();
}

BlockPropagator::BlockPropagator(Kind kind, int cutoff, double coupling) : kind_(kind), cutoff_(cutoff) {
    require(cutoff >= 0, "cutoff must be >= 0");
    int first_key = kind == Kind::kPdc ? -cutoff : 0;
    int last_key = kind == Kind::kPdc ? cutoff : 2 * cutoff;
    for (int key = first_key; key <= last_key; key++) {
        Block block;
        block.key = key;
        if (kind == Kind::kPdc) {
            // n_H - n_V == key
            for (int nv = std::max(0, -key); nv + key <= cutoff && nv <= cutoff; nv++) {
                block.states.emplace_back(nv + key, nv);
            }
        } else {
            // n_H + n_V == key
            for (int nh = std::max(0, key - cutoff); nh <= std::min(key, cutoff); nh++) {
                block.states.emplace_back(nh, key - nh);
            }
        }
        const int len = static_cast<int>(block.states.size());

        // Couplings c_i between consecutive states: G[i+1][i] = c_i = -G[i][i+1].
        Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(len, len);
        for (int i = 0; i + 1 < len; i++) {
            auto [nh, nv] = block.states[i];
            double c;
            if (kind == Kind::kPdc) {
                c = coupling * std::sqrt(static_cast<double>(nh + 1) * (nv + 1));
            } else {
                c = coupling * std::sqrt(static_cast<double>(nh + 1) * nv);
            }
            sym(i + 1, i) = c;
            sym(i, i + 1) = c;
        }

        // G = D (-i S) D^+ with D = diag(i^k), so exp(G) = D Q exp(-i L) Q^T D^+.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
        const Eigen::MatrixXd &q = eig.eigenvectors();
        Eigen::VectorXcd phases(len);
        for (int i = 0; i < len; i++) {
            phases[i] = std::exp(Complex(0.0, -eig.eigenvalues()[i]));
        }
        Eigen::MatrixXcd u = q.cast<Complex>() * phases.asDiagonal() * q.transpose().cast<Complex>();
        static const Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        for (int r = 0; r < len; r++) {
            for (int c = 0; c < len; c++) {
                // D[r] * conj(D[c]) = i^(r - c)
                u(r, c) *= kIPowers[((r - c) % 4 + 4) % 4];
            }
        }
        block.unitary = std::move(u);
        blocks_.push_back(std::move(block));
    }
}

const BlockPropagator::Block *BlockPropagator::find_block(int n_h, int n_v, int *index) const {
    if (n_h < 0 || n_v < 0 || n_h > cutoff_ || n_v > cutoff_) {
        return nullptr;
    }
    int key = kind_ == Kind::kPdc ? n_h - n_v : n_h + n_v;
    int first_key = kind_ == Kind::kPdc ? -cutoff_ : 0;
    const Block &block = blocks_[key - first_key];
    *index = n_h - block.states.front().first;
    return &block;
}

Complex BlockPropagator::element(int n, int m, int j, int k) const {
    int out_index = 0;
    int in_index = 0;
    const Block *out_block = find_block(n, m, &out_index);
    const Block *in_block = find_block(j, k, &in_index);
    if (out_block == nullptr || in_block == nullptr || out_block != in_block) {
        return 0.0;
    }
    return out_block->unitary(out_index, in_index);
}

TwoModeFockState BlockPropagator::apply(const TwoModeFockState &state) const {
    require(state.cutoff() == cutoff_, "state cutoff does not match propagator cutoff");
    TwoModeFockState out(cutoff_);
    for (const Block &block : blocks_) {
        const int len = static_cast<int>(block.states.size());
        Eigen::VectorXcd in(len);
        for (int i = 0; i < len; i++) {
            in[i] = state(block.states[i].first, block.states[i].second);
        }
        if (in.squaredNorm() == 0.0) {
            continue;
        }
        Eigen::VectorXcd res = block.unitary * in;
        for (int i = 0; i < len; i++) {
            out(block.states[i].first, block.states[i].second) = res[i];
        }
    }
    out.set_tail_bound(state.tail_bound());
    return out;
}

TwoModeFockState apply_pdc_numeric(const TwoModeFockState &state, const SqueezeParams &params) {
    require(params.gain >= 1.0, "gain must be >= 1");
    require(state.is_normalized(), "input state is not normalized");
    double r = params.squeeze;
    if (r == 0.0 && params.gain != 1.0) {
        r = std::acosh(std::sqrt(params.gain));
    }
    BlockPropagator prop(BlockPropagator::Kind::kPdc, state.cutoff(), r);
    TwoModeFockState out = prop.apply(state);
    double leak = out.top_layer_population(2);
    if (leak > kLeakageLimit) {
        throw CutoffTooSmallError(
            "cutoff " + std::to_string(state.cutoff()) + " too small: top-layer population " + std::to_string(leak));
    }
    return out;
}

TwoModeFockState apply_bs_numeric(const TwoModeFockState &state, double theta) {
    require(state.is_normalized(), "input state is not normalized");
    BlockPropagator prop(BlockPropagator::Kind::kBeamSplitter, state.cutoff(), theta);
    return prop.apply(state);
}

double pdc_matrix_element(int n, int m, int j, int k, double gain) {
    require(gain >= 1.0, "gain must be >= 1, got " + std::to_string(gain));
    require(n >= 0 && m >= 0 && j >= 0 && k >= 0, "occupations must be >= 0");
    if (n - m != j - k) {
        return 0.0;
    }
    if (gain == 1.0) {
        return n == j ? 1.0 : 0.0;
    }
    // exp[r(K+ - K-)] = exp(tau K+) cosh(r)^(-2 K0) exp(-tau K-), tau = tanh r.
    // <n,m|U|j,k> = sqrt(j!k!n!m!) sum_p (-1)^p tau^(p+q) g^(-(j+k+1-2p)/2)
    //               / (p! q! (j-p)! (k-p)!),  q = n - j + p.
    const double log_tau = 0.5 * (std::log(gain - 1.0) - std::log(gain));
    const double log_g = std::log(gain);
    const double log_norm = 0.5 * (log_factorial(j) + log_factorial(k) + log_factorial(n) + log_factorial(m));
    CompensatedSum acc;
    for (int p = std::max(0, j - n); p <= std::min(j, k); p++) {
        int q = n - j + p;
        double log_term = (p + q) * log_tau - 0.5 * (j + k + 1 - 2 * p) * log_g - log_factorial(p) -
                          log_factorial(q) - log_factorial(j - p) - log_factorial(k - p) + log_norm;
        double term = std::exp(log_term);
        acc += (p % 2 == 0) ? term : -term;
    }
    return acc.value();
}

double bs_matrix_element(int n, int m, int j, int k, double theta) {
    require(n >= 0 && m >= 0 && j >= 0 && k >= 0, "occupations must be >= 0");
    if (n + m != j + k) {
        return 0.0;
    }
    // U a^+ U^+ = a^+ c - b^+ s,  U b^+ U^+ = a^+ s + b^+ c.
    // Pick p of the j photons and n - p of the k photons into mode a.
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double abs_c = std::abs(c);
    const double abs_s = std::abs(s);
    const double log_norm = 0.5 * (log_factorial(n) + log_factorial(m) - log_factorial(j) - log_factorial(k));
    CompensatedSum acc;
    for (int p = std::max(0, n - k); p <= std::min(j, n); p++) {
        int c_power = k - n + 2 * p;
        int s_power = j + n - 2 * p;
        double log_term =
            log_norm + log_binomial(j, p) + log_binomial(k, n - p) + log_pow(abs_c, c_power) + log_pow(abs_s, s_power);
        double term = std::exp(log_term);
        bool negative = ((j - p) % 2 == 1);
        if (c < 0 && c_power % 2 == 1) {
            negative = !negative;
        }
        if (s < 0 && s_power % 2 == 1) {
            negative = !negative;
        }
        acc += negative ? -term : term;
    }
    return acc.value();
}

int choose_cutoff(double max_gain, int input_photons) {
    require(max_gain >= 1.0, "gain must be >= 1");
    require(input_photons >= 0, "input photon count must be >= 0");
    int n = 0;
    if (max_gain > 1.0) {
        double log_ratio = std::log((max_gain - 1.0) / max_gain);
        // smallest N with (N + 1) log_ratio < log(1e-12)
        n = static_cast<int>(std::floor(std::log(1e-12) / log_ratio));
        while ((n + 1) * log_ratio >= std::log(1e-12)) {
            n++;
        }
    }
    n += input_photons <= 2 ? 2 : input_photons;
    return std::max(n, input_photons);
}

}  // namespace cjlab
