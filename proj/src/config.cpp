#include "hoq/config.hpp"

#include <cstdlib>
#include <stdexcept>

#include "hoq/serialize.hpp"

namespace hoq {

void RunConfig::validate() const {
  if (tol <= 0) throw std::invalid_argument("config: tol must be positive");
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (max_total_dim < 2)
    throw std::invalid_argument("config: max_total_dim must be >= 2");
}

RunConfig load_config_file(const std::string& path) {
  RunConfig c;
  json j = load_json_file(path);
  c.seed = j.value("seed", c.seed);
  c.trials = j.value("trials", c.trials);
  c.tol = j.value("tol", c.tol);
  c.max_total_dim = j.value("max_total_dim", c.max_total_dim);
  c.validate();
  return c;
}

RunConfig load_config() {
  if (const char* path = std::getenv("HOQ_CONFIG")) {
    return load_config_file(path);
  }
  return RunConfig{};
}

}  // namespace hoq
