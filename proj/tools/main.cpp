// Command-line front end: channel validation, oracle extraction, round-trip
// experiments, and the switch demonstration.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "hoq/config.hpp"
#include "hoq/lat.hpp"
#include "hoq/serialize.hpp"

namespace {

using namespace hoq;

constexpr int kExitPass = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;

SystemType qdim(const std::string& l, std::size_t d) {
  return SystemType::single(l, d);
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1;
  m(1, 0) = 1;
  return m;
}
ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  return m;
}
ComplexMatrix plus_state() {
  ComplexMatrix m(2, 2);
  m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 0.5;
  return m;
}

void print_report_line(const LatCheckReport& r) {
  std::string tail;
  if (r.first_failing_seed)
    tail = "  first_failing_seed=" + std::to_string(*r.first_failing_seed);
  std::printf("  %-12s trials=%d max_deviation=%.3e%s\n", r.check.c_str(),
              r.trials, r.max_deviation, tail.c_str());
}

int cmd_validate_channel(const std::string& file,
                         const std::string& relation_file, double tol) {
  Channel c = channel_from_json(load_json_file(file));
  auto rep = is_channel(c, tol);
  std::printf("cp: %s (min eigenvalue %.3e)\n", rep.cp ? "true" : "false",
              rep.min_eig);
  std::printf("tp: %s (deviation %.3e)\n", rep.tp ? "true" : "false",
              rep.tp_deviation);
  bool ok = rep.cp && rep.tp;
  if (!relation_file.empty()) {
    SignalingRelation rel = relation_from_json(load_json_file(relation_file));
    for (const auto& edge : rel.forbidden) {
      const double dev = edge_signaling_deviation(c, rel, edge);
      const bool pass = dev <= tol;
      std::printf("no-signaling %s -> %s: %s (deviation %.3e)\n",
                  edge.first.c_str(), edge.second.c_str(),
                  pass ? "pass" : "violated", dev);
      ok = ok && pass;
    }
  }
  return ok ? kExitPass : kExitRefuted;
}

LatOracle build_oracle(const std::string& name, std::uint64_t seed) {
  if (name == "identity")
    return embed(identity_supermap(qdim("A", 2), qdim("A'", 2)));
  if (name == "switch-fixed") {
    MultiSupermap sw = switch_supermap(2);
    Channel fixed = random_channel(qdim("A2", 2), qdim("A2'", 2), 2,
                                   derive_seed(seed, 5));
    return embed(fix_all_but_one(sw, 0, {fixed}));
  }
  if (name == "adversarial-reduce")
    return adversarial_reduce_oracle(qdim("A", 2), qdim("A'", 2));
  if (name == "adversarial-nonlinear")
    return adversarial_nonlinear_oracle(qdim("A", 2), qdim("A'", 2));
  // otherwise: a comb file
  Comb c = comb_from_json(load_json_file(name));
  return embed(comb_to_supermap(c));
}

int cmd_extract(const std::string& oracle, const std::string& out_file,
                const RunConfig& cfg) {
  LatOracle o = build_oracle(oracle, cfg.seed);
  auto rep = check_local_applicability(o, cfg.trials, cfg.seed);
  std::printf("local applicability:\n");
  print_report_line(rep.naturality);
  print_report_line(rep.dragging);
  print_report_line(rep.combined);
  if (!rep.pass(1e-9)) {
    std::printf("refuted: not locally applicable\n");
    return kExitRefuted;
  }
  Supermap s = extract(o);
  if (!out_file.empty()) {
    save_json_file(out_file, supermap_to_json(s));
    std::printf("wrote %s\n", out_file.c_str());
  }
  auto srep = is_supermap(s, cfg.trials, derive_seed(cfg.seed, 1), cfg.tol);
  std::printf("extracted supermap: psd=%s typing=%s max_tp_deviation=%.3e\n",
              srep.psd ? "true" : "false", srep.pass() ? "pass" : "fail",
              srep.max_tp_deviation);
  return srep.pass() ? kExitPass : kExitRefuted;
}

int cmd_roundtrip(const std::string& dims, int n, std::uint64_t seed,
                  double tol, std::size_t env, bool classical_mode,
                  std::size_t max_total_dim) {
  std::size_t da = 2, dap = 2, db = 2, dbp = 2;
  if (!dims.empty() &&
      std::sscanf(dims.c_str(), "%zu,%zu,%zu,%zu", &da, &dap, &db, &dbp) != 4)
    throw CLI::ValidationError("--dims expects dA,dA',dB,dB'");
  if (da < 1 || dap < 1 || db < 1 || dbp < 1 || env < 1)
    throw CLI::ValidationError("dims must be positive");
  if (da * dap > max_total_dim || db * dbp > max_total_dim ||
      env * da > max_total_dim)
    throw CLI::ValidationError("dims exceed max_total_dim");
  if (n < 1) throw CLI::ValidationError("--trials must be >= 1");

  double worst = 0.0;
  for (int t = 0; t < n; ++t) {
    const std::uint64_t st = derive_seed(seed, static_cast<std::uint64_t>(t));
    double dist = 0.0;
    if (classical_mode) {
      using namespace hoq::classical;
      StochSupermap s = cl_comb_to_supermap(
          cl_random_comb(qdim("A", da), qdim("A'", dap), qdim("B", db),
                         qdim("B'", dbp), env, st));
      dist = s.dist(cl_extract(cl_embed(s)));
    } else {
      Supermap s = comb_to_supermap(random_comb(qdim("A", da), qdim("A'", dap),
                                                qdim("B", db), qdim("B'", dbp),
                                                env, st));
      dist = s.choi_dist(extract(embed(s)));
    }
    worst = std::max(worst, dist);
    std::printf("trial %3d: choi distance %.3e\n", t, dist);
  }
  std::printf("max choi distance over %d trials: %.3e (tolerance %.1e)\n", n,
              worst, tol);
  return worst <= tol ? kExitPass : kExitRefuted;
}

void print_qubit_state(const char* label, const ComplexMatrix& m) {
  std::printf("  %s [[%.6f%+.6fi, %.6f%+.6fi], [%.6f%+.6fi, %.6f%+.6fi]]\n",
              label, m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(),
              m(0, 1).imag(), m(1, 0).real(), m(1, 0).imag(), m(1, 1).real(),
              m(1, 1).imag());
}

int cmd_switch_demo(const RunConfig& cfg) {
  MultiSupermap sw = switch_supermap(2);
  MultiSupermap csw = classical_switch_supermap(2);
  Channel cX = unitary_channel(qdim("A1", 2), qdim("A1'", 2), pauli_x());
  Channel cZ = unitary_channel(qdim("A2", 2), qdim("A2'", 2), pauli_z());

  auto control_out = [](const MultiSupermap& s, const Channel& f,
                        const Channel& g) {
    Channel induced = apply_multi_supermap(s, {f, g});
    ComplexMatrix rho =
        kron(ComplexMatrix::identity(2) * cx{0.5}, plus_state());
    ComplexMatrix out = apply_channel(induced, rho);
    CTensor t = op_tensor(out, {{"S", 2}, {"Q", 2}});
    return partial_trace(t, {"S"}).mat();
  };

  std::printf("slots (X, Z), control |+>, system maximally mixed:\n");
  ComplexMatrix q = control_out(sw, cX, cZ);
  print_qubit_state("quantum switch control out:  ", q);
  ComplexMatrix minus(2, 2);
  minus(0, 0) = minus(1, 1) = 0.5;
  minus(0, 1) = minus(1, 0) = -0.5;
  const double fid_dev = q.frob_dist(minus);
  std::printf("  distance from |-><-|: %.3e\n", fid_dev);
  ComplexMatrix qc = control_out(csw, cX, cZ);
  print_qubit_state("classical switch control out:", qc);

  Rng rng(cfg.seed);
  ComplexMatrix u = random_unitary(2, rng);
  Channel cu1 = unitary_channel(qdim("A1", 2), qdim("A1'", 2), u);
  Channel cu2 = unitary_channel(qdim("A2", 2), qdim("A2'", 2), u);
  std::printf("slots (U, U) for a random unitary U:\n");
  ComplexMatrix quu = control_out(sw, cu1, cu2);
  print_qubit_state("quantum switch control out:  ", quu);
  std::printf("  distance from |+><+|: %.3e\n", quu.frob_dist(plus_state()));

  auto rep = is_multi_supermap(sw, cfg.trials, cfg.seed, cfg.tol);
  std::printf(
      "switch typing: psd=%s pass=%s trials=%d max_tp_deviation=%.3e\n",
      rep.psd ? "true" : "false", rep.pass() ? "true" : "false", rep.trials,
      rep.max_tp_deviation);
  return rep.pass() && fid_dev <= 1e-10 ? kExitPass : kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"higher-order quantum operations toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  try {
    cfg = load_config();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  }

  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--trials", cfg.trials, "randomized-check trial count");
  app.add_option("--tol", cfg.tol, "acceptance tolerance");

  auto* validate = app.add_subcommand("validate-channel",
                                      "check a channel file for cp/tp and "
                                      "signaling constraints");
  std::string channel_file, relation_file;
  validate->add_option("file", channel_file, "channel JSON file")->required();
  validate->add_option("--signaling", relation_file, "relation JSON file");

  auto* extract_cmd = app.add_subcommand(
      "extract", "verify local applicability of an oracle and extract its "
                 "supermap");
  std::string oracle, out_file;
  extract_cmd
      ->add_option("--oracle", oracle,
                   "builtin oracle (identity, switch-fixed, "
                   "adversarial-reduce, adversarial-nonlinear) or a comb "
                   "JSON file")
      ->required();
  extract_cmd->add_option("--out", out_file, "output supermap JSON file");

  auto* roundtrip = app.add_subcommand(
      "roundtrip", "embed/extract round trip on random combs");
  std::string dims = "2,2,2,2";
  int rt_trials = cfg.trials;
  std::size_t env = 2;
  bool classical_mode = false;
  roundtrip->add_option("--dims", dims, "dA,dA',dB,dB'");
  roundtrip->add_option("--trials", rt_trials, "number of random combs");
  roundtrip->add_option("--env", env, "comb memory dimension");
  roundtrip->add_flag("--classical", classical_mode,
                      "run the stochastic-matrix analogue");

  auto* demo = app.add_subcommand("switch-demo",
                                  "control-qubit outputs of the switch and "
                                  "its typing report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    cfg.validate();
    if (validate->parsed())
      return cmd_validate_channel(channel_file, relation_file, cfg.tol);
    if (extract_cmd->parsed()) return cmd_extract(oracle, out_file, cfg);
    if (roundtrip->parsed())
      return cmd_roundtrip(dims, rt_trials, cfg.seed, cfg.tol, env,
                           classical_mode, cfg.max_total_dim);
    if (demo->parsed()) return cmd_switch_demo(cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
