#pragma once

#include <string>

#include "magnls/field.hpp"

namespace magnls {

/// Field snapshot: one JSON header line
///   {"dim":2,"n":64,"L":8.0,"components":1,"layout":"x1-fastest"}\n
/// followed by little-endian float64 samples interleaved (re, im) in x1-fastest
/// order; spinors store the up block then the down block. Round-trips are
/// bit-exact.
void write_snapshot(const std::string& path, const ScalarField& f);
void write_snapshot(const std::string& path, const SpinorField& f);

ScalarField read_snapshot(const std::string& path);
SpinorField read_spinor_snapshot(const std::string& path);

/// Reads and checks the stored grid against `expect` (ConfigError on mismatch).
ScalarField read_snapshot(const std::string& path, const Grid& expect);

}  // namespace magnls
