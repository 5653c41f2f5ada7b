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

#ifndef CJLAB_WIGNER_H
#define CJLAB_WIGNER_H

#include <Eigen/Dense>
#include <ostream>
#include <vector>

#include "cjlab/fock.h"
#include "cjlab/model.h"

namespace cjlab {

/// Convex mixture of pure two-mode states.
struct TwoModeMixedState {
    struct Component {
        double weight = 0.0;
        TwoModeFockState state;
    };
    std::vector<Component> components;

    int cutoff() const;
    void validate() const;
    /// Largest population any component holds in its two top Fock layers.
    double top_layer_population() const;
    std::vector<double> h_marginal() const;
    /// <n_H> from the Fock amplitudes.
    double mean_h() const;
    /// Rescales every component to unit norm on the truncated space and zeroes its tail.
    void renormalize();
};

/// U_g applied to the overlap-weighted input mixture of `model`.
///
/// Components U_g|j,k> carry weights from o1, o2 as for |~j,k>; zero-weight
/// components are dropped. Amplitudes come from the closed-form matrix elements.
TwoModeMixedState output_mixed_state(const ExperimentModel &model, int cutoff);

/// Wigner function of |m><n| for one mode, hbar = 1, x = (a + a^+)/sqrt(2).
Complex wigner_kernel(int m, int n, double x, double p);

/// W(x, p_x, y, p_y); vacuum gives 1/pi^2 at the origin.
double wigner_point(const TwoModeMixedState &state, double x, double px, double y, double py);

struct WignerGridSpec {
    double px_min = -4.0;
    double px_max = 4.0;
    int px_steps = 201;
    double y_min = -4.0;
    double y_max = 4.0;
    int y_steps = 201;

    void validate() const;
};

/// W(x = 0, p_x, y, p_y = 0). Rows index p_x, columns y.
struct WignerGrid {
    Eigen::MatrixXd values;
    double px0 = 0.0;
    double dpx = 0.0;
    double y0 = 0.0;
    double dy = 0.0;
    /// Largest imaginary part seen before taking the real part.
    double max_imag = 0.0;
    /// Some component has more than 1e-6 population in its top two Fock layers.
    bool cutoff_warning = false;

    double px(int row) const {
        return px0 + row * dpx;
    }
    double y(int col) const {
        return y0 + col * dy;
    }
};

WignerGrid wigner_slice(const TwoModeMixedState &state, const WignerGridSpec &spec);

struct WignerMoments {
    double normalization = 0.0;
    double mean_h = 0.0;
};

/// Tensor-grid quadrature of W over [-half_width, half_width]^4.
WignerMoments wigner_moments(const TwoModeMixedState &state, double half_width = 5.0, int points = 101);

/// CSV with columns p_x, y, W.
void write_wigner_csv(const WignerGrid &grid, std::ostream &out);
void write_wigner_grid(const WignerGrid &grid, std::ostream &out);

}  // namespace cjlab

#endif
