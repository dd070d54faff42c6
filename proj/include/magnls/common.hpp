#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace magnls {

using c64 = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Bad or inconsistent experiment configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical guard failure: a field is not resolved on its grid (exit code 3).
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

/// Two algebraically equivalent evaluations disagree beyond tolerance (exit code 4).
class ConsistencyError : public std::runtime_error {
public:
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

/// Thread cap from MAGNLS_THREADS (>=1); defaults to hardware concurrency.
std::size_t max_threads();

/// Static partition of [0, count) over worker threads. Body must only write
/// disjoint outputs per index; reductions stay out of this helper so artifact
/// bytes do not depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace magnls
