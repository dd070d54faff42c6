#include "magnls/transforms.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace magnls {

namespace {

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

struct PlanKey {
    int rank;        // 0: 1d of length n; 2/3: full cube; 10+axis: one axis of cube
    std::size_t n;
    int sign;
    bool operator<(const PlanKey& o) const {
        return std::tie(rank, n, sign) < std::tie(o.rank, o.n, o.sign);
    }
};

fftw_plan get_plan(const PlanKey& key) {
    static std::map<PlanKey, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const std::size_t n = key.n;
    std::size_t total = n;
    if (key.rank == 2) total = n * n;
    if (key.rank == 3) total = n * n * n;
    if (key.rank >= 10) total = 1;  // computed below
    int dim_of_cube = 0;
    if (key.rank >= 10 && key.rank < 20) dim_of_cube = 2;
    if (key.rank >= 20) dim_of_cube = 3;
    if (dim_of_cube > 0) {
        total = 1;
        for (int a = 0; a < dim_of_cube; ++a) total *= n;
    }
    std::vector<c64> scratch(total);
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = nullptr;
    const int ni = static_cast<int>(n);
    const int sgn = key.sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
    if (key.rank == 0) {
        plan = fftw_plan_dft_1d(ni, buf, buf, sgn, flags);
    } else if (key.rank == 2) {
        plan = fftw_plan_dft_2d(ni, ni, buf, buf, sgn, flags);
    } else if (key.rank == 3) {
        plan = fftw_plan_dft_3d(ni, ni, ni, buf, buf, sgn, flags);
    } else {
        // one axis of a dim_of_cube hypercube; axis 0 is the fastest (stride 1)
        const int axis = key.rank % 10;
        fftw_iodim dims[1];
        fftw_iodim loops[2];
        int stride = 1;
        for (int a = 0; a < axis; ++a) stride *= ni;
        dims[0] = {ni, stride, stride};
        int nloops = 0;
        int lstride = 1;
        for (int a = 0; a < dim_of_cube; ++a) {
            if (a == axis) {
                lstride *= ni;
                continue;
            }
            loops[nloops++] = {ni, lstride, lstride};
            lstride *= ni;
        }
        plan = fftw_plan_guru_dft(1, dims, nloops, loops, buf, buf, sgn, flags);
    }
    cache.emplace(key, plan);
    return plan;
}

void execute(fftw_plan plan, c64* data) {
    fftw_complex* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, p, p);
}

}  // namespace

void fft_inplace(c64* data, const Grid& grid, int sign) {
    execute(get_plan({grid.dim(), grid.n(), sign}), data);
}

void fft_axis_inplace(c64* data, const Grid& grid, int axis, int sign) {
    const int rank = (grid.dim() == 2 ? 10 : 20) + axis;
    execute(get_plan({rank, grid.n(), sign}), data);
}

void fft1d_inplace(c64* data, std::size_t n, int sign) {
    execute(get_plan({0, n, sign}), data);
}

void checkerboard(c64* data, const Grid& grid) {
    const std::size_t n = grid.n();
    if (grid.dim() == 2) {
        std::size_t idx = 0;
        for (std::size_t j2 = 0; j2 < n; ++j2)
            for (std::size_t j1 = 0; j1 < n; ++j1, ++idx)
                if ((j1 + j2) & 1u) data[idx] = -data[idx];
    } else {
        std::size_t idx = 0;
        for (std::size_t j3 = 0; j3 < n; ++j3)
            for (std::size_t j2 = 0; j2 < n; ++j2)
                for (std::size_t j1 = 0; j1 < n; ++j1, ++idx)
                    if ((j1 + j2 + j3) & 1u) data[idx] = -data[idx];
    }
}

void checkerboard_axis(c64* data, const Grid& grid, int axis) {
    const std::size_t n = grid.n();
    const std::size_t size = grid.size();
    std::size_t stride = 1;
    for (int a = 0; a < axis; ++a) stride *= n;
    for (std::size_t idx = 0; idx < size; ++idx) {
        const std::size_t j = (idx / stride) % n;
        if (j & 1u) data[idx] = -data[idx];
    }
}

ScalarField forward_transform(const ScalarField& f) {
    ScalarField out = f;
    checkerboard(out.data(), out.grid());
    fft_inplace(out.data(), out.grid(), -1);
    checkerboard(out.data(), out.grid());
    kernels::ops().cscale(out.data(), c64{out.grid().cell_volume(), 0.0}, out.size());
    return out;
}

ScalarField inverse_transform(const ScalarField& F) {
    ScalarField out = F;
    checkerboard(out.data(), out.grid());
    fft_inplace(out.data(), out.grid(), +1);
    checkerboard(out.data(), out.grid());
    double box = 1.0;
    for (int a = 0; a < out.grid().dim(); ++a) box *= 2.0 * out.grid().extent();
    kernels::ops().cscale(out.data(), c64{1.0 / box, 0.0}, out.size());
    return out;
}

ScalarField spectral_momentum(const ScalarField& f, int axis) {
    if (axis < 1 || axis > f.grid().dim()) throw std::invalid_argument("spectral_momentum: bad axis");
    ScalarField out = f;
    const Grid& g = out.grid();
    const int a = axis - 1;
    checkerboard_axis(out.data(), g, a);
    fft_axis_inplace(out.data(), g, a, -1);
    const std::size_t n = g.n();
    std::size_t stride = 1;
    for (int q = 0; q < a; ++q) stride *= n;
    const double inv_n = 1.0 / static_cast<double>(n);
    c64* v = out.data();
    const auto& ks = g.freqs();
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const std::size_t j = (idx / stride) % n;
        v[idx] *= kTwoPi * ks[j] * inv_n;
    }
    fft_axis_inplace(out.data(), g, a, +1);
    checkerboard_axis(out.data(), g, a);
    return out;
}

void apply_spectral_multiplier(ScalarField& f, const std::vector<c64>& table) {
    const Grid& g = f.grid();
    if (table.size() != g.size()) throw std::invalid_argument("spectral multiplier size mismatch");
    checkerboard(f.data(), g);
    fft_inplace(f.data(), g, -1);
    checkerboard(f.data(), g);
    kernels::ops().cmul(f.data(), table.data(), f.size());
    checkerboard(f.data(), g);
    fft_inplace(f.data(), g, +1);
    checkerboard(f.data(), g);
    const double inv = 1.0 / static_cast<double>(g.size());
    kernels::ops().cscale(f.data(), c64{inv, 0.0}, f.size());
}

std::vector<c64> free_phase_table(const Grid& grid, double t, const std::vector<int>& axes) {
    std::vector<bool> use(static_cast<std::size_t>(grid.dim()) + 1, false);
    for (int a : axes) {
        if (a < 1 || a > grid.dim()) throw std::invalid_argument("free_phase_table: bad axis");
        use[a] = true;
    }
    const std::size_t n = grid.n();
    const auto& ks = grid.freqs();
    std::vector<c64> table(grid.size());
    const double c = -4.0 * kPi * kPi * t;
    if (grid.dim() == 2) {
        std::size_t idx = 0;
        for (std::size_t j2 = 0; j2 < n; ++j2)
            for (std::size_t j1 = 0; j1 < n; ++j1, ++idx) {
                double k2 = 0.0;
                if (use[1]) k2 += ks[j1] * ks[j1];
                if (use[2]) k2 += ks[j2] * ks[j2];
                table[idx] = std::polar(1.0, c * k2);
            }
    } else {
        std::size_t idx = 0;
        for (std::size_t j3 = 0; j3 < n; ++j3)
            for (std::size_t j2 = 0; j2 < n; ++j2)
                for (std::size_t j1 = 0; j1 < n; ++j1, ++idx) {
                    double k2 = 0.0;
                    if (use[1]) k2 += ks[j1] * ks[j1];
                    if (use[2]) k2 += ks[j2] * ks[j2];
                    if (use[3]) k2 += ks[j3] * ks[j3];
                    table[idx] = std::polar(1.0, c * k2);
                }
    }
    return table;
}

}  // namespace magnls
