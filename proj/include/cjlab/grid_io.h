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

#ifndef CJLAB_GRID_IO_H
#define CJLAB_GRID_IO_H

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace cjlab {

enum class GridDtype : uint8_t { kComplex128 = 1, kReal64 = 2 };

/// Uniform 2-D grid of samples, row-major.
///
/// Binary layout (little endian): "CJGR", u16 version, u8 dtype, u8 reserved,
/// u32 rows, u32 cols, f64 x0, f64 dx, f64 y0, f64 dy, then rows*cols values
/// (complex values as re, im pairs). x runs along rows, y along columns.
struct GridData {
    GridDtype dtype = GridDtype::kReal64;
    uint32_t rows = 0;
    uint32_t cols = 0;
    double x0 = 0.0;
    double dx = 1.0;
    double y0 = 0.0;
    double dy = 1.0;
    /// rows * cols doubles, or 2 * rows * cols for complex data.
    std::vector<double> data;
};

void write_grid(const GridData &grid, std::ostream &out);
GridData read_grid(std::istream &in);

/// Decimal form with 17 significant digits ("%.17g").
std::string format_double(double v);

}  // namespace cjlab

#endif
