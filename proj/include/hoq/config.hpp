#pragma once

#include <cstdint>
#include <string>

namespace hoq {

struct RunConfig {
  std::uint64_t seed = 20240617;
  int trials = 200;
  double tol = 1e-8;
  std::size_t max_total_dim = 64;

  void validate() const;
};

// Defaults, overridden by the JSON config file at HOQ_CONFIG (if set), which
// may carry any of: seed, trials, tol, max_total_dim.
RunConfig load_config();
RunConfig load_config_file(const std::string& path);

}  // namespace hoq
