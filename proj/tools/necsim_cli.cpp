// Command-line front end for the network error-correction simulator.
//
// Subcommands:
//   run       Monte Carlo experiment from a JSON config
//   capacity  capacity table over (C, power) combinations
//   compat    compatible-codeword-count experiment
//   selftest  quick invariant checks against enumeration oracles
//
// Exit codes: 0 success, 1 selftest failure, 2 config error, 3 budget error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "necsim/experiment.hpp"

namespace {

int cmd_run(const std::string& config_path, std::uint64_t* seed_opt,
            std::size_t* trials_opt, const std::string& out,
            const std::string& format, int fixed_codebook_opt) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config " << config_path << "\n";
    return 2;
  }
  nlohmann::json j;
  in >> j;
  necsim::ExperimentConfig cfg = necsim::ExperimentConfig::from_json(j);
  if (seed_opt) cfg.seed = *seed_opt;
  if (trials_opt) cfg.trials = *trials_opt;
  if (fixed_codebook_opt >= 0) cfg.fixed_codebook = fixed_codebook_opt != 0;

  if (cfg.sweep_assignments) {
    const necsim::SweepResult sweep = necsim::run_sweep(cfg);
    nlohmann::json out_j{{"version", necsim::kVersion},
                         {"config", cfg.to_json()},
                         {"assignments", nlohmann::json::array()}};
    for (const auto& run : sweep.runs)
      out_j["assignments"].push_back(
          {{"read_only", run.assignment.read_only},
           {"write_only", run.assignment.write_only},
           {"read_write", run.assignment.read_write},
           {"summary", necsim::stats_json(run.stats)}});
    out_j["worst_assignment_index"] = sweep.worst_index;
    out_j["worst_error_probability"] =
        sweep.runs[sweep.worst_index].stats.error_probability;
    if (out.empty()) {
      std::cout << out_j.dump(2) << "\n";
    } else {
      std::ofstream os(out);
      if (!os) {
        std::cerr << "error: cannot open " << out << "\n";
        return 2;
      }
      os << out_j.dump(2) << "\n";
    }
    return 0;
  }

  const necsim::ExperimentResult result = necsim::run_trials(cfg);
  if (out.empty()) {
    if (format == "csv")
      necsim::emit_csv(result.trials, std::cout);
    else
      std::cout << necsim::summary_json(cfg, result.stats).dump(2) << "\n";
  } else {
    necsim::emit_results(cfg, result, out, format);
  }
  return 0;
}

int cmd_capacity(const std::string& c_range, const std::string& powers) {
  int c_min = 0, c_max = 0;
  if (std::sscanf(c_range.c_str(), "%d:%d", &c_min, &c_max) != 2) {
    c_min = c_max = std::stoi(c_range);
  }
  std::vector<necsim::AdversaryPower> list;
  std::stringstream ss(powers);
  std::string item;
  while (std::getline(ss, item, ';')) {
    necsim::AdversaryPower p;
    if (std::sscanf(item.c_str(), "%d,%d,%d", &p.z_ro, &p.z_wo, &p.z_rw) != 3)
      throw std::invalid_argument("capacity: powers must be 'z_ro,z_wo,z_rw;...'");
    list.push_back(p);
  }
  if (list.empty()) throw std::invalid_argument("capacity: no powers given");
  std::cout << "C,z_ro,z_wo,z_rw,regime,capacity,secrecy_capacity\n";
  for (const auto& row : necsim::capacity_table(c_min, c_max, list))
    std::cout << row.C << ',' << row.power.z_ro << ',' << row.power.z_wo << ','
              << row.power.z_rw << ',' << necsim::regime_name(row.regime) << ','
              << row.rate << ',' << row.secure_rate << "\n";
  return 0;
}

int cmd_compat(std::uint32_t p, std::uint32_t e, int n, int C, int z_r,
               std::size_t M, std::size_t books, std::uint64_t seed) {
  const necsim::Field f(p, e);
  const necsim::CompatReport rep =
      necsim::compatible_count_experiment(f, n, C, z_r, M, books, seed);
  nlohmann::json j{
      {"exact_probability", rep.probability.value()},
      {"compatible_subspaces", rep.probability.compatible.str()},
      {"grassmannian_size", rep.probability.total.str()},
      {"expected_mean_count", rep.expected_mean},
      {"empirical_mean_count", rep.empirical_mean},
      {"min_count", rep.min_count},
      {"sigma_of_mean", rep.sigma_of_mean},
      {"within_3_sigma", rep.within_3sigma}};
  std::cout << j.dump(2) << "\n";
  return rep.within_3sigma ? 0 : 1;
}

int cmd_selftest() {
  using namespace necsim;
  int failures = 0;
  auto check = [&](bool ok, const char* what) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
    if (!ok) ++failures;
  };

  const Field f2(2), f3(3), f4(2, 2);
  check(f4.mul(2, 2) == 3, "GF(4) generator square");
  check(gaussian_coeff(4, 2, 2) == 35, "subspace count (4,2) over GF(2)");
  check(enumerate_grassmannian(f2, 4, 2).size() == 35,
        "Grassmannian enumeration matches the count");
  check(Topology::butterfly().min_cut() == 2, "butterfly min-cut");
  {
    Rng rng(7);
    const Subspace a = sample_uniform_subspace(f3, 4, 2, rng);
    const Subspace b = sample_uniform_subspace(f3, 4, 2, rng);
    const Subspace c = sample_uniform_subspace(f3, 4, 2, rng);
    const int ab = injection_distance(a, b), bc = injection_distance(b, c),
              ac = injection_distance(a, c);
    check(ac <= ab + bc, "injection distance triangle inequality");
  }
  {
    const Field f4b(2, 2);
    const CosetCode code = CosetCode::build_mds_parity(f4b, 3, 1);
    bool perfect = true;
    for (int i = 0; i < 3; ++i) perfect = perfect && leakage_entropy(code, {i}).perfect;
    check(perfect, "single-symbol observations leak nothing (L=3, z_r=1)");
  }
  std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subspace-code network error-correction simulator"};
  app.require_subcommand(1);

  std::string config_path, out, format = "csv";
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool seed_set = false, trials_set = false;
  int fixed_codebook = -1;
  auto* run = app.add_subcommand("run", "run a Monte Carlo experiment");
  run->add_option("--config", config_path, "JSON experiment config")->required();
  run->add_option("--seed", seed, "override the master seed")
      ->each([&](const std::string&) { seed_set = true; });
  run->add_option("--trials", trials, "override the trial count")
      ->each([&](const std::string&) { trials_set = true; });
  run->add_option("--out", out, "output path (stdout if omitted)");
  run->add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_flag("--fixed-codebook,!--fresh-codebook",
                [&](std::int64_t v) { fixed_codebook = v > 0 ? 1 : 0; },
                "one codebook per experiment vs one per trial");

  std::string c_range = "1:6", powers = "0,0,1";
  auto* capacity = app.add_subcommand("capacity", "print a capacity table");
  capacity->add_option("--c-range", c_range, "min:max network min-cut");
  capacity->add_option("--powers", powers, "semicolon list of z_ro,z_wo,z_rw");

  std::uint32_t p = 2, e = 1;
  int n = 4, C = 2, z_r = 1;
  std::size_t M = 16, books = 200;
  std::uint64_t cseed = 1;
  auto* compat = app.add_subcommand("compat", "compatible-count experiment");
  compat->add_option("--p", p, "field characteristic");
  compat->add_option("--e", e, "extension degree");
  compat->add_option("--n", n, "packet length");
  compat->add_option("--C", C, "codeword dimension");
  compat->add_option("--zr", z_r, "read budget");
  compat->add_option("--M", M, "codebook size");
  compat->add_option("--books", books, "number of codebooks");
  compat->add_option("--seed", cseed, "seed");

  app.add_subcommand("selftest", "run quick built-in checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("run"))
      return cmd_run(config_path, seed_set ? &seed : nullptr,
                     trials_set ? &trials : nullptr, out, format, fixed_codebook);
    if (app.got_subcommand("capacity")) return cmd_capacity(c_range, powers);
    if (app.got_subcommand("compat"))
      return cmd_compat(p, e, n, C, z_r, M, books, cseed);
    return cmd_selftest();
  } catch (const necsim::budget_error& ex) {
    std::cerr << "budget error: " << ex.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
