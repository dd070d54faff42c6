#pragma once

#include <string>
#include <vector>

namespace magnls {

/// Batch front-end. mode in {evolve, evolve-pauli, virial-check,
/// strichartz-check, blowup-scan, certify-example}. Returns the process exit
/// code: 0 success, 2 config error, 3 numerical guard failure, 4 internal
/// consistency error.
int run(const std::string& mode, const std::string& config_path, const std::string& out_dir,
        const std::vector<std::string>& overrides = {}, std::uint64_t seed = 0);

}  // namespace magnls
