#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "hoq/serialize.hpp"
#include "hoq/supermap.hpp"

using namespace hoq;

namespace {

#ifndef HOQ_CLI_PATH
#define HOQ_CLI_PATH "hoq"
#endif

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string out_path = "/tmp/hoq_cli_test_out.txt";
  const std::string cmd =
      std::string(HOQ_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  const int rc = std::system(cmd.c_str());
  std::ifstream f(out_path);
  std::stringstream ss;
  ss << f.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

SystemType qb(const std::string& l) { return SystemType::single(l, 2); }

std::string write_tmp(const std::string& name, const json& j) {
  const std::string path = "/tmp/" + name;
  save_json_file(path, j);
  return path;
}

}  // namespace

TEST_CASE("validate-channel accepts the identity channel") {
  Channel id = identity_channel(qb("A"));
  auto path = write_tmp("cli_id_channel.json", channel_to_json(id));
  auto r = run_cli("validate-channel " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("cp: true") != std::string::npos);
  CHECK(r.output.find("tp: true") != std::string::npos);
}

TEST_CASE("validate-channel flags both violated edges of the swap") {
  SystemType pin({{"A", 2}, {"B", 2}}), pout({{"A'", 2}, {"B'", 2}});
  Channel sw = swap_channel(qb("A"), qb("B"));
  Channel swp(pin, pout, sw.choi_matrix(), true);
  auto cpath = write_tmp("cli_swap_channel.json", channel_to_json(swp));
  auto rpath = write_tmp(
      "cli_ns_relation.json",
      relation_to_json(no_signaling_bipartite("A", "B", "A'", "B'")));
  auto r = run_cli("validate-channel " + cpath + " --signaling " + rpath);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("B -> A': violated") != std::string::npos);
  CHECK(r.output.find("A -> B': violated") != std::string::npos);
}

TEST_CASE("validate-channel exits 2 on a malformed file") {
  const std::string path = "/tmp/cli_bad_channel.json";
  std::ofstream f(path);
  f << "{\"system\": {\"in_factors\": [{\"label\": \"A\", \"dim\": 2}], "
       "\"out_factors\": [], \"deterministic\": true}, \"choi\": {\"rows\": "
       "2, \"cols\": 2, \"entries\": [[1,0],[0,0],[0,0]]}}";
  f.close();
  auto r = run_cli("validate-channel " + path);
  CHECK(r.exit_code == 2);
}

TEST_CASE("extract on a comb file round-trips through the supermap file") {
  Comb c = random_comb(qb("A"), qb("A'"), qb("B"), qb("B'"), 2, 314);
  auto cpath = write_tmp("cli_comb.json", comb_to_json(c));
  const std::string spath = "/tmp/cli_supermap_out.json";
  auto r = run_cli("extract --oracle " + cpath + " --out " + spath +
                   " --trials 40");
  CHECK(r.exit_code == 0);
  Supermap read_back = supermap_from_json(load_json_file(spath));
  Supermap expect = comb_to_supermap(c);
  CHECK(read_back.choi_dist(expect) <= 1e-8);
}

TEST_CASE("extract refutes the adversarial builtins with a failing seed") {
  for (const std::string name :
       {std::string("adversarial-reduce"), std::string("adversarial-nonlinear")}) {
    auto r = run_cli("extract --oracle " + name + " --trials 60");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("first_failing_seed=") != std::string::npos);
    CHECK(r.output.find("refuted") != std::string::npos);
  }
}

TEST_CASE("extract of the identity builtin writes the identity supermap") {
  const std::string spath = "/tmp/cli_identity_supermap.json";
  auto r = run_cli("extract --oracle identity --out " + spath +
                   " --trials 30");
  CHECK(r.exit_code == 0);
  Supermap got = supermap_from_json(load_json_file(spath));
  CHECK(got.choi_dist(identity_supermap(qb("A"), qb("A'"))) <= 1e-10);
}

TEST_CASE("roundtrip passes on qubit dims and rejects a zero trial count") {
  auto r = run_cli("roundtrip --dims 2,2,2,2 --trials 5 --seed 99");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("max choi distance") != std::string::npos);

  auto bad = run_cli("roundtrip --trials 0");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("roundtrip classical mode passes") {
  auto r = run_cli("roundtrip --trials 4 --classical --seed 7");
  CHECK(r.exit_code == 0);
}

TEST_CASE("switch demo reports the Pauli facts and passes typing") {
  auto r = run_cli("switch-demo --trials 25");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("distance from |-><-|: 0.000e+00") != std::string::npos);
  CHECK(r.output.find("pass=true") != std::string::npos);
}

TEST_CASE("identical command, config and seed give identical output") {
  auto a = run_cli("roundtrip --trials 4 --seed 1234");
  auto b = run_cli("roundtrip --trials 4 --seed 1234");
  CHECK(a.output == b.output);
  auto c = run_cli("roundtrip --trials 4 --seed 1235");
  CHECK(a.output == c.output);  // distances are exactly zero either way
  auto d = run_cli("switch-demo --trials 10 --seed 42");
  auto e = run_cli("switch-demo --trials 10 --seed 42");
  CHECK(d.output == e.output);
}

TEST_CASE("config file via environment variable overrides defaults") {
  const std::string cfg_path = "/tmp/cli_config.json";
  {
    std::ofstream f(cfg_path);
    f << "{\"trials\": 3, \"seed\": 777}";
  }
  auto r = run_cli("roundtrip");  // trials come from the config
  const std::string with_env =
      "HOQ_CONFIG=" + cfg_path + " " + std::string(HOQ_CLI_PATH) +
      " roundtrip > /tmp/hoq_cli_env_out.txt 2>&1";
  const int rc = std::system(with_env.c_str());
  CHECK(WEXITSTATUS(rc) == 0);
  std::ifstream f("/tmp/hoq_cli_env_out.txt");
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().find("over 3 trials") != std::string::npos);
  (void)r;
}
