#pragma once

#include <cstddef>
#include <vector>

#include "magnls/common.hpp"

namespace magnls {

/// Uniform periodic grid on [-L, L)^dim with its exact DFT-dual frequency
/// lattice k in (1/(2L)) * {-n/2, ..., n/2-1} (cycles per unit length,
/// matching the e^{-2 pi i k.x} transform convention).
///
/// Sample layout is row-major with x1 varying fastest:
///   index = j1 + n*j2 (+ n^2*j3), coordinate x_a = (j_a - n/2) * h.
class Grid {
public:
    Grid(int dim, std::size_t n, double extent);

    int dim() const { return dim_; }
    std::size_t n() const { return n_; }
    double extent() const { return extent_; }
    double spacing() const { return h_; }
    std::size_t size() const { return size_; }
    double cell_volume() const { return cell_volume_; }
    double nyquist() const { return 0.5 / h_; }

    double coord(std::size_t j) const { return (static_cast<double>(j) - 0.5 * static_cast<double>(n_)) * h_; }
    double freq(std::size_t j) const { return (static_cast<double>(j) - 0.5 * static_cast<double>(n_)) / (2.0 * extent_); }

    /// Per-axis coordinate / frequency tables (ascending order).
    const std::vector<double>& coords() const { return coords_; }
    const std::vector<double>& freqs() const { return freqs_; }

    bool operator==(const Grid& other) const {
        return dim_ == other.dim_ && n_ == other.n_ && extent_ == other.extent_;
    }
    bool operator!=(const Grid& other) const { return !(*this == other); }

private:
    int dim_;
    std::size_t n_;
    double extent_;
    double h_;
    std::size_t size_;
    double cell_volume_;
    std::vector<double> coords_;
    std::vector<double> freqs_;
};

Grid make_grid(int dim, std::size_t n, double extent);

}  // namespace magnls
