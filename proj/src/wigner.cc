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

#include "cjlab/wigner.h"

#include <boost/math/special_functions/laguerre.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "cjlab/errors.h"
#include "cjlab/grid_io.h"
#include "cjlab/numeric.h"

namespace cjlab {

namespace {

struct Entry {
    int h;
    int v;
    Complex amp;
};

std::vector<Entry> nonzero_entries(const TwoModeFockState &s) {
    std::vector<Entry> out;
    for (int h = 0; h < s.dim(); h++) {
        for (int v = 0; v < s.dim(); v++) {
            if (s(h, v) != Complex(0.0, 0.0)) {
                out.push_back({h, v, s(h, v)});
            }
        }
    }
    return out;
}

// kernel(m, n) sampled on a list of (x, p) points, cached per (m, n).
class KernelTable {
   public:
    KernelTable(std::vector<double> xs, std::vector<double> ps) : xs_(std::move(xs)), ps_(std::move(ps)) {
    }
    const Eigen::VectorXcd &get(int m, int n) {
        auto key = std::make_pair(m, n);
        auto it = cache_.find(key);
        if (it != cache_.end()) {
            return it->second;
        }
        Eigen::VectorXcd v(xs_.size());
        for (size_t i = 0; i < xs_.size(); i++) {
            v[i] = wigner_kernel(m, n, xs_[i], ps_[i]);
        }
        return cache_.emplace(key, std::move(v)).first->second;
    }

   private:
    std::vector<double> xs_;
    std::vector<double> ps_;
    std::map<std::pair<int, int>, Eigen::VectorXcd> cache_;
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; i++) {
        out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    }
    return out;
}

}  // namespace

int TwoModeMixedState::cutoff() const {
    int c = 0;
    for (const auto &comp : components) {
        c = std::max(c, comp.state.cutoff());
    }
    return c;
}

void TwoModeMixedState::validate() const {
    require(!components.empty(), "mixed state has no components");
    CompensatedSum w;
    for (const auto &comp : components) {
        require(comp.weight >= 0.0, "component weight must be >= 0");
        require(comp.state.is_normalized(), "component state is not normalized");
        w += comp.weight;
    }
    require(std::abs(w.value() - 1.0) <= 1e-12, "component weights must sum to 1");
}

double TwoModeMixedState::top_layer_population() const {
    double top = 0.0;
    for (const auto &comp : components) {
        top = std::max(top, comp.state.top_layer_population(2));
    }
    return top;
}

std::vector<double> TwoModeMixedState::h_marginal() const {
    std::vector<double> out(cutoff() + 1, 0.0);
    for (const auto &comp : components) {
        std::vector<double> m = comp.state.h_marginal();
        for (size_t n = 0; n < m.size(); n++) {
            out[n] += comp.weight * m[n];
        }
    }
    return out;
}

double TwoModeMixedState::mean_h() const {
    std::vector<double> p = h_marginal();
    CompensatedSum acc;
    for (size_t n = 0; n < p.size(); n++) {
        acc += n * p[n];
    }
    return acc.value();
}

void TwoModeMixedState::renormalize() {
    for (auto &comp : components) {
        double norm2 = comp.state.norm_squared();
        require(norm2 > 0.0, "component has no population inside the cutoff");
        double scale = 1.0 / std::sqrt(norm2);
        for (int h = 0; h < comp.state.dim(); h++) {
            for (int v = 0; v < comp.state.dim(); v++) {
                comp.state(h, v) *= scale;
            }
        }
        comp.state.set_tail_bound(0.0);
    }
}

TwoModeMixedState output_mixed_state(const ExperimentModel &model, int cutoff) {
    model.validate();
    require(cutoff >= 2, "cutoff must be >= 2");
    double o1 = model.h_injected() ? model.o1 : 0.0;
    double o2 = model.v_injected() ? model.o2 : 0.0;
    const std::tuple<int, int, double> terms[] = {
        {0, 0, (1.0 - o1) * (1.0 - o2)},
        {0, 1, (1.0 - o1) * o2},
        {1, 0, o1 * (1.0 - o2)},
        {1, 1, o1 * o2},
    };
    TwoModeMixedState mixed;
    for (auto [j, k, w] : terms) {
        if (w == 0.0) {
            continue;
        }
        TwoModeFockState s(cutoff);
        for (int n = std::max(0, j - k); n <= cutoff; n++) {
            int m = n - j + k;
            if (m <= cutoff) {
                s(n, m) = pdc_matrix_element(n, m, j, k, model.g);
            }
        }
        s.set_tail_bound(std::max(0.0, 1.0 - s.norm_squared()));
        mixed.components.push_back({w, std::move(s)});
    }
    return mixed;
}

Complex wigner_kernel(int m, int n, double x, double p) {
    require(m >= 0 && n >= 0, "Fock indices must be >= 0");
    if (m < n) {
        return std::conj(wigner_kernel(n, m, x, p));
    }
    // (1/pi) (-1)^n sqrt(n!/m!) (sqrt2 (x - i p))^(m-n) e^(-r^2) L_n^(m-n)(2 r^2)
    const int d = m - n;
    const double r2 = x * x + p * p;
    const double lag = boost::math::laguerre(static_cast<unsigned>(n), static_cast<unsigned>(d), 2.0 * r2);
    Complex phase(1.0, 0.0);
    double log_mag = 0.5 * (log_factorial(n) - log_factorial(m)) - r2;
    if (d > 0) {
        if (r2 == 0.0) {
            return 0.0;
        }
        log_mag += d * 0.5 * std::log(2.0 * r2);
        phase = std::polar(1.0, -d * std::atan2(p, x));
    }
    double sign = n % 2 == 0 ? 1.0 : -1.0;
    return sign * std::exp(log_mag) * lag * phase / std::numbers::pi;
}

double wigner_point(const TwoModeMixedState &state, double x, double px, double y, double py) {
    CompensatedSum re;
    for (const auto &comp : state.components) {
        std::vector<Entry> e = nonzero_entries(comp.state);
        for (const auto &a : e) {
            for (const auto &b : e) {
                Complex c = comp.weight * a.amp * std::conj(b.amp);
                re += (c * wigner_kernel(a.h, b.h, x, px) * wigner_kernel(a.v, b.v, y, py)).real();
            }
        }
    }
    return re.value();
}

void WignerGridSpec::validate() const {
    require(px_steps >= 1 && y_steps >= 1, "grid steps must be >= 1");
    require(px_max >= px_min && y_max >= y_min, "grid bounds are reversed");
}

WignerGrid wigner_slice(const TwoModeMixedState &state, const WignerGridSpec &spec) {
    state.validate();
    spec.validate();
    WignerGrid grid;
    grid.px0 = spec.px_min;
    grid.dpx = spec.px_steps > 1 ? (spec.px_max - spec.px_min) / (spec.px_steps - 1) : 0.0;
    grid.y0 = spec.y_min;
    grid.dy = spec.y_steps > 1 ? (spec.y_max - spec.y_min) / (spec.y_steps - 1) : 0.0;
    grid.cutoff_warning = state.top_layer_population() > 1e-6;

    std::vector<double> px = linspace(spec.px_min, spec.px_max, spec.px_steps);
    std::vector<double> ys = linspace(spec.y_min, spec.y_max, spec.y_steps);
    KernelTable h_table(std::vector<double>(px.size(), 0.0), px);
    KernelTable v_table(ys, std::vector<double>(ys.size(), 0.0));

    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(spec.px_steps, spec.y_steps);
    for (const auto &comp : state.components) {
        std::vector<Entry> e = nonzero_entries(comp.state);
        const int pairs = static_cast<int>(e.size() * e.size());
        Eigen::MatrixXcd u(spec.px_steps, pairs);
        Eigen::MatrixXcd v(spec.y_steps, pairs);
        int col = 0;
        for (const auto &a : e) {
            for (const auto &b : e) {
                Complex c = comp.weight * a.amp * std::conj(b.amp);
                u.col(col) = c * h_table.get(a.h, b.h);
                v.col(col) = v_table.get(a.v, b.v);
                col++;
            }
        }
        total.noalias() += u * v.transpose();
    }
    grid.max_imag = total.imag().cwiseAbs().maxCoeff();
    grid.values = total.real();
    return grid;
}

WignerMoments wigner_moments(const TwoModeMixedState &state, double half_width, int points) {
    state.validate();
    require(half_width > 0.0 && points >= 3, "quadrature needs a positive width and >= 3 points");
    std::vector<double> axis = linspace(-half_width, half_width, points);
    const double h = axis[1] - axis[0];
    std::vector<double> xs;
    std::vector<double> ps;
    std::vector<double> weights;
    for (int i = 0; i < points; i++) {
        for (int j = 0; j < points; j++) {
            xs.push_back(axis[i]);
            ps.push_back(axis[j]);
            double wi = (i == 0 || i == points - 1) ? 0.5 : 1.0;
            double wj = (j == 0 || j == points - 1) ? 0.5 : 1.0;
            weights.push_back(wi * wj * h * h);
        }
    }
    KernelTable table(xs, ps);
    // Integrals of one kernel over its plane, plain and weighted by (x^2 + p^2 - 1)/2.
    std::map<std::pair<int, int>, std::pair<Complex, Complex>> integrals;
    auto integral = [&](int m, int n) {
        auto key = std::make_pair(m, n);
        auto it = integrals.find(key);
        if (it != integrals.end()) {
            return it->second;
        }
        const Eigen::VectorXcd &k = table.get(m, n);
        Complex plain = 0.0;
        Complex number = 0.0;
        for (size_t i = 0; i < xs.size(); i++) {
            plain += weights[i] * k[i];
            number += weights[i] * k[i] * 0.5 * (xs[i] * xs[i] + ps[i] * ps[i] - 1.0);
        }
        return integrals.emplace(key, std::make_pair(plain, number)).first->second;
    };

    Complex norm = 0.0;
    Complex mean = 0.0;
    for (const auto &comp : state.components) {
        std::vector<Entry> e = nonzero_entries(comp.state);
        for (const auto &a : e) {
            for (const auto &b : e) {
                Complex c = comp.weight * a.amp * std::conj(b.amp);
                auto [h_plain, h_number] = integral(a.h, b.h);
                auto [v_plain, v_number] = integral(a.v, b.v);
                norm += c * h_plain * v_plain;
                mean += c * h_number * v_plain;
            }
        }
    }
    return {norm.real(), mean.real()};
}

void write_wigner_csv(const WignerGrid &grid, std::ostream &out) {
    out << "p_x,y,W\r\n";
    for (int r = 0; r < grid.values.rows(); r++) {
        for (int c = 0; c < grid.values.cols(); c++) {
            out << format_double(grid.px(r)) << ',' << format_double(grid.y(c)) << ','
                << format_double(grid.values(r, c)) << "\r\n";
        }
    }
}

void write_wigner_grid(const WignerGrid &grid, std::ostream &out) {
    GridData g;
    g.dtype = GridDtype::kReal64;
    g.rows = static_cast<uint32_t>(grid.values.rows());
    g.cols = static_cast<uint32_t>(grid.values.cols());
    g.x0 = grid.px0;
    g.dx = grid.dpx;
    g.y0 = grid.y0;
    g.dy = grid.dy;
    for (uint32_t r = 0; r < g.rows; r++) {
        for (uint32_t c = 0; c < g.cols; c++) {
            g.data.push_back(grid.values(r, c));
        }
    }
    write_grid(g, out);
}

}  // namespace cjlab
