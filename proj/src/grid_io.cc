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

#include "cjlab/grid_io.h"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <string>

#include "cjlab/errors.h"

namespace cjlab {

namespace {

constexpr char kMagic[4] = {'C', 'J', 'G', 'R'};
constexpr uint16_t kVersion = 1;

template <typename T>
void put(std::ostream &out, T v) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(b, b + sizeof(T));
    }
    out.write(reinterpret_cast<const char *>(b), sizeof(T));
}

template <typename T>
T get(std::istream &in) {
    unsigned char b[sizeof(T)];
    if (!in.read(reinterpret_cast<char *>(b), sizeof(T))) {
        throw IoError("grid file truncated");
    }
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(b, b + sizeof(T));
    }
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}

size_t values_per_cell(GridDtype dtype) {
    return dtype == GridDtype::kComplex128 ? 2 : 1;
}

}  // namespace

void write_grid(const GridData &grid, std::ostream &out) {
    size_t expected = static_cast<size_t>(grid.rows) * grid.cols * values_per_cell(grid.dtype);
    require(grid.data.size() == expected, "grid data size does not match rows * cols");
    out.write(kMagic, 4);
    put<uint16_t>(out, kVersion);
    put<uint8_t>(out, static_cast<uint8_t>(grid.dtype));
    put<uint8_t>(out, 0);
    put<uint32_t>(out, grid.rows);
    put<uint32_t>(out, grid.cols);
    put<double>(out, grid.x0);
    put<double>(out, grid.dx);
    put<double>(out, grid.y0);
    put<double>(out, grid.dy);
    for (double v : grid.data) {
        put<double>(out, v);
    }
    if (!out) {
        throw IoError("failed to write grid");
    }
}

GridData read_grid(std::istream &in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
        throw IoError("grid file has bad magic");
    }
    uint16_t version = get<uint16_t>(in);
    if (version != kVersion) {
        throw IoError("unsupported grid version " + std::to_string(version));
    }
    GridData grid;
    uint8_t dtype = get<uint8_t>(in);
    if (dtype != 1 && dtype != 2) {
        throw IoError("unknown grid dtype " + std::to_string(dtype));
    }
    grid.dtype = static_cast<GridDtype>(dtype);
    get<uint8_t>(in);
    grid.rows = get<uint32_t>(in);
    grid.cols = get<uint32_t>(in);
    grid.x0 = get<double>(in);
    grid.dx = get<double>(in);
    grid.y0 = get<double>(in);
    grid.dy = get<double>(in);
    grid.data.resize(static_cast<size_t>(grid.rows) * grid.cols * values_per_cell(grid.dtype));
    for (double &v : grid.data) {
        v = get<double>(in);
    }
    return grid;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace cjlab
