#include "magnls/grid.hpp"

#include <cstdlib>
#include <string>

namespace magnls {

namespace {
bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(int dim, std::size_t n, double extent)
    : dim_(dim), n_(n), extent_(extent) {
    if (dim != 2 && dim != 3) throw ConfigError("grid dim must be 2 or 3, got " + std::to_string(dim));
    if (n < 8 || !power_of_two(n))
        throw ConfigError("grid n must be a power of two >= 8, got " + std::to_string(n));
    if (!(extent > 0.0)) throw ConfigError("grid extent L must be positive");
    h_ = 2.0 * extent / static_cast<double>(n);
    size_ = 1;
    for (int a = 0; a < dim; ++a) size_ *= n;
    cell_volume_ = 1.0;
    for (int a = 0; a < dim; ++a) cell_volume_ *= h_;
    coords_.resize(n);
    freqs_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        coords_[j] = coord(j);
        freqs_[j] = freq(j);
    }
}

Grid make_grid(int dim, std::size_t n, double extent) { return Grid(dim, n, extent); }

std::size_t max_threads() {
    static std::size_t cap = [] {
        std::size_t hw = std::thread::hardware_concurrency();
        if (hw == 0) hw = 1;
        if (const char* env = std::getenv("MAGNLS_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 1 && static_cast<std::size_t>(v) < hw) hw = static_cast<std::size_t>(v);
        }
        return hw;
    }();
    return cap;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body) {
    const std::size_t workers = std::min(max_threads(), count == 0 ? std::size_t{1} : count);
    if (workers <= 1) {
        body(0, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = w * chunk;
        const std::size_t e = std::min(count, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&body, b, e] { body(b, e); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace magnls
