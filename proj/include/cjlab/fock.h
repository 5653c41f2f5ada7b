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

#ifndef CJLAB_FOCK_H
#define CJLAB_FOCK_H

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace cjlab {

using Complex = std::complex<double>;

/// Gain, squeezing and beam-splitter angle. g = cosh^2(r), T = cos^2(theta).
struct SqueezeParams {
    double gain = 1.0;
    double squeeze = 0.0;
    double theta = 0.0;

    static SqueezeParams from_gain(double gain);
    static SqueezeParams from_squeeze(double squeeze);
    /// Beam-splitter angle for transmittance T in [0, 1].
    static double theta_for_transmittance(double transmittance);

    double transmittance() const;
    void validate() const;
};

/// Pure two-mode state truncated to 0 <= n_H, n_V <= cutoff.
///
/// `tail_bound` is the probability mass the truncation leaves out. For a
/// normalized state norm_squared() + tail_bound() == 1 within 1e-9.
class TwoModeFockState {
   public:
    explicit TwoModeFockState(int cutoff);
    static TwoModeFockState basis(int cutoff, int n_h, int n_v);

    int cutoff() const {
        return cutoff_;
    }
    int dim() const {
        return cutoff_ + 1;
    }
    Complex &operator()(int n_h, int n_v) {
        return amplitudes_[static_cast<size_t>(n_h) * dim() + n_v];
    }
    const Complex &operator()(int n_h, int n_v) const {
        return amplitudes_[static_cast<size_t>(n_h) * dim() + n_v];
    }
    double probability(int n_h, int n_v) const {
        return std::norm((*this)(n_h, n_v));
    }

    double tail_bound() const {
        return tail_bound_;
    }
    void set_tail_bound(double tail);

    double norm_squared() const;
    bool is_normalized(double tol = 1e-9) const;
    /// Photon-number distribution of the H mode (or V mode).
    std::vector<double> h_marginal() const;
    std::vector<double> v_marginal() const;
    /// Population in the top `layers` layers of either mode.
    double top_layer_population(int layers = 2) const;

   private:
    int cutoff_;
    std::vector<Complex> amplitudes_;
    double tail_bound_ = 0.0;
};

/// exp(G) on the truncated two-mode space, one block per conserved quantity.
///
/// For PDC the generator r(a_H^+ a_V^+ - a_H a_V) conserves n_H - n_V; for the
/// beam splitter theta(a^+ b - b^+ a) conserves n_H + n_V. Each block is a real
/// antisymmetric tridiagonal matrix; after a diagonal phase change it becomes
/// -i times a real symmetric tridiagonal matrix, which is diagonalized.
class BlockPropagator {
   public:
    enum class Kind { kPdc, kBeamSplitter };

    BlockPropagator(Kind kind, int cutoff, double coupling);

    /// Applies the propagator; keeps all amplitudes and carries the input tail.
    TwoModeFockState apply(const TwoModeFockState &state) const;
    /// <n,m| exp(G) |j,k> on the truncated space.
    Complex element(int n, int m, int j, int k) const;

    int cutoff() const {
        return cutoff_;
    }

   private:
    struct Block {
        int key = 0;
        std::vector<std::pair<int, int>> states;
        Eigen::MatrixXcd unitary;
    };
    const Block *find_block(int n_h, int n_v, int *index) const;

    Kind kind_;
    int cutoff_;
    std::vector<Block> blocks_;
};

/// U_g^PDC |state> by exponentiating the truncated generator.
///
/// Throws CutoffTooSmallError when more than 1e-6 of the output population
/// sits in the two top layers.
TwoModeFockState apply_pdc_numeric(const TwoModeFockState &state, const SqueezeParams &params);

/// U_T^BS |state> with T = cos^2(theta). Exactly unitary on the truncated space.
TwoModeFockState apply_bs_numeric(const TwoModeFockState &state, double theta);

/// <n,m|U_g^PDC|j,k>, zero unless n - m == j - k. Real in the
/// exp[r(a_H^+ a_V^+ - a_H a_V)] convention.
double pdc_matrix_element(int n, int m, int j, int k, double gain);

/// <n,m|U_T^BS|j,k> with U = exp[theta(a^+ b - b^+ a)], zero unless n + m == j + k.
double bs_matrix_element(int n, int m, int j, int k, double theta);

/// Cutoff N with ((g-1)/g)^(N+1) < 1e-12, plus 2 when the input has at most
/// two photons in total and plus the photon count otherwise.
int choose_cutoff(double max_gain, int input_photons);

}  // namespace cjlab

#endif
