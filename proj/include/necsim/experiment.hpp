#ifndef NECSIM_EXPERIMENT_HPP
#define NECSIM_EXPERIMENT_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "necsim/adversary.hpp"
#include "necsim/codebook.hpp"
#include "necsim/common.hpp"
#include "necsim/network.hpp"
#include "necsim/secrecy.hpp"

namespace necsim {

enum class Verdict { Correct, WrongMessage, Ambiguous, NoneWithinRadius, RankDeficient };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Correct: return "correct";
    case Verdict::WrongMessage: return "wrong_message";
    case Verdict::Ambiguous: return "ambiguous";
    case Verdict::NoneWithinRadius: return "none_within_radius";
    case Verdict::RankDeficient: return "rank_deficient";
  }
  return "?";
}

struct TrialResult {
  std::size_t trial = 0;
  std::size_t message = 0;
  Verdict verdict = Verdict::Correct;
  long compatible_count = 0;
  int dim_ro = 0, dim_u = 0, dim_jam = 0;
};

struct WilsonInterval {
  double low = 0, high = 0;
};

/// 95% Wilson score interval for a binomial proportion.
inline WilsonInterval wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (p + z * z / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct SummaryStats {
  std::size_t trials = 0;
  std::size_t errors = 0;
  double error_probability = 0;
  WilsonInterval wilson;
  std::array<std::size_t, 5> verdict_histogram{};  // indexed by Verdict
  double mean_compatible = 0;
  Regime regime = Regime::Weak;
  long capacity = 0;
  long secrecy_capacity = 0;
  std::size_t codebook_collisions = 0;
  double effective_rate = 0;
};

struct SecrecyConfig {
  bool enabled = false;
  int length = 0;       // L
  int z_r = 0;
  int ell = 1;
};

struct ExperimentConfig {
  std::uint32_t p = 2, e = 1;
  std::vector<std::uint32_t> poly;  // reduction polynomial, optional for e > 1

  std::string topology = "parallel:2";
  std::optional<nlohmann::json> topology_json;

  std::size_t n = 4;
  std::optional<int> c_override;
  std::size_t codebook_size = 4;
  bool distinct = false;
  std::optional<std::string> codebook_load;  // JSON file exported by Codebook

  AdversaryPower power;
  bool sweep_assignments = false;
  EdgeAssignment assignment;
  StrategyKind strategy = StrategyKind::NoAttack;
  SourceCoding source_coding = SourceCoding::Random;

  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  bool fixed_codebook = true;

  SecrecyConfig secrecy;

  static ExperimentConfig from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    const auto& field = j.at("field");
    c.p = field.at("p").get<std::uint32_t>();
    c.e = field.value("e", 1u);
    if (field.contains("poly")) c.poly = field.at("poly").get<std::vector<std::uint32_t>>();
    if (j.at("topology").is_string())
      c.topology = j.at("topology").get<std::string>();
    else
      c.topology_json = j.at("topology");
    const auto& code = j.at("code");
    c.n = code.at("n").get<std::size_t>();
    if (code.contains("C")) c.c_override = code.at("C").get<int>();
    if (code.contains("load")) {
      c.codebook_load = code.at("load").get<std::string>();
      c.codebook_size = code.value("M", std::size_t{0});
    } else {
      c.codebook_size = code.at("M").get<std::size_t>();
    }
    c.distinct = code.value("distinct", false);
    const auto& adv = j.at("adversary");
    const auto& pw = adv.at("power");
    c.power = AdversaryPower{pw.value("z_ro", 0), pw.value("z_wo", 0), pw.value("z_rw", 0)};
    if (adv.contains("assignment")) {
      if (adv.at("assignment").is_string()) {
        if (adv.at("assignment").get<std::string>() != "sweep")
          throw std::invalid_argument("config: assignment must be lists or \"sweep\"");
        c.sweep_assignments = true;
      } else {
        const auto& a = adv.at("assignment");
        c.assignment.read_only = a.value("read_only", std::vector<int>{});
        c.assignment.write_only = a.value("write_only", std::vector<int>{});
        c.assignment.read_write = a.value("read_write", std::vector<int>{});
      }
    } else {
      c.sweep_assignments = c.power.z_total() > 0;
    }
    c.strategy = strategy_from_name(adv.value("strategy", std::string("none")));
    const std::string sc = j.value("source_coding", std::string("random"));
    if (sc == "random")
      c.source_coding = SourceCoding::Random;
    else if (sc == "identity")
      c.source_coding = SourceCoding::Identity;
    else
      throw std::invalid_argument("config: source_coding must be random|identity");
    c.trials = j.value("trials", std::size_t{1000});
    c.seed = j.value("seed", std::uint64_t{0});
    c.fixed_codebook = j.value("fixed_codebook", true);
    if (j.contains("secrecy")) {
      const auto& s = j.at("secrecy");
      c.secrecy.enabled = s.value("enabled", false);
      c.secrecy.length = s.value("L", 0);
      c.secrecy.z_r = s.value("z_r", 0);
      c.secrecy.ell = s.value("ell", 1);
    }
    return c;
  }

  nlohmann::json to_json() const {
    nlohmann::json adv{{"power",
                        {{"z_ro", power.z_ro}, {"z_wo", power.z_wo}, {"z_rw", power.z_rw}}},
                       {"strategy", strategy_name(strategy)}};
    if (sweep_assignments)
      adv["assignment"] = "sweep";
    else
      adv["assignment"] = nlohmann::json{{"read_only", assignment.read_only},
                                         {"write_only", assignment.write_only},
                                         {"read_write", assignment.read_write}};
    nlohmann::json j{
        {"field", {{"p", p}, {"e", e}, {"poly", poly}}},
        {"topology", topology_json ? *topology_json : nlohmann::json(topology)},
        {"code",
         codebook_load
             ? nlohmann::json{{"n", n}, {"load", *codebook_load}}
             : nlohmann::json{
                   {"n", n}, {"M", codebook_size}, {"distinct", distinct}}},
        {"adversary", adv},
        {"source_coding", source_coding == SourceCoding::Random ? "random" : "identity"},
        {"trials", trials},
        {"seed", seed},
        {"fixed_codebook", fixed_codebook}};
    if (c_override) j["code"]["C"] = *c_override;
    if (secrecy.enabled)
      j["secrecy"] = {{"enabled", true},
                      {"L", secrecy.length},
                      {"z_r", secrecy.z_r},
                      {"ell", secrecy.ell}};
    return j;
  }
};

struct ExperimentResult {
  SummaryStats stats;
  std::vector<TrialResult> trials;
  bool c_overridden = false;
};

namespace detail {

struct ExperimentContext {
  std::shared_ptr<Field> field;
  std::shared_ptr<Topology> topology;
  int C = 0;
  int decode_radius = 0;
};

inline ExperimentContext build_context(const ExperimentConfig& cfg) {
  ExperimentContext ctx;
  ctx.field = std::make_shared<Field>(cfg.p, cfg.e, cfg.poly);
  ctx.topology = std::make_shared<Topology>(
      cfg.topology_json ? Topology::from_json(*cfg.topology_json)
                        : Topology::by_name(cfg.topology));
  ctx.C = cfg.c_override ? *cfg.c_override : ctx.topology->min_cut();
  if (ctx.C < 1 || static_cast<std::size_t>(ctx.C) > cfg.n)
    throw std::invalid_argument("config: need 1 <= C <= n");
  ctx.decode_radius = cfg.power.z_w();
  if (cfg.power.z_total() > static_cast<int>(ctx.topology->edges().size()))
    throw std::invalid_argument("config: more adversarial edges than edges");
  if (cfg.codebook_size > (1ULL << 22))
    throw budget_error("config: codebook size exceeds the decode budget of 2^22");
  return ctx;
}

inline TrialResult run_one_trial(const ExperimentConfig& cfg,
                                 const ExperimentContext& ctx, const Codebook& cb,
                                 const EdgeAssignment& assignment,
                                 std::size_t trial_index, Rng trial_rng) {
  const Field& f = *ctx.field;
  const Topology& topo = *ctx.topology;
  const std::size_t m = trial_rng.below(cb.size());
  const Matrix& x = cb.encode(m).basis();

  const NetworkCode code =
      sample_rlnc(topo, f, trial_rng, cfg.source_coding, ctx.C);
  const TransferMatrices nominal = nominal_transfer(code, assignment);

  // Split T_AJ into the read-only prefix; the read-write rows follow.
  const int z_ro = cfg.power.z_ro;
  Matrix t_ro(f, z_ro, ctx.C);
  for (int i = 0; i < z_ro; ++i)
    for (int j = 0; j < ctx.C; ++j) t_ro.set(i, j, nominal.t_aj.at(i, j));
  const Matrix z_full = nominal.t_aj * x;
  const Matrix z_ro_obs = t_ro * x;

  std::vector<std::vector<std::uint32_t>> write_gvecs;
  for (int e : assignment.write_edges()) write_gvecs.push_back(nominal.edge_gvec[e]);

  const AdversaryView view{&cb,     t_ro,        z_ro_obs, nominal.t_aj,
                           z_full,  write_gvecs, cfg.n};
  const std::optional<Matrix> jam_rows =
      jam(AttackStrategy{cfg.strategy}, view, trial_rng);

  const TransmitResult tx = transmit(code, x, assignment, jam_rows);
  const Subspace y = Subspace::from_matrix(tx.y);

  TrialResult r;
  r.trial = trial_index;
  r.message = m;
  const DecodeResult dec = cb.decode(y, ctx.decode_radius);
  switch (dec.status) {
    case DecodeStatus::Decoded:
      r.verdict = dec.index == static_cast<int>(m) ? Verdict::Correct
                                                   : Verdict::WrongMessage;
      break;
    case DecodeStatus::Ambiguous:
      r.verdict = Verdict::Ambiguous;
      break;
    case DecodeStatus::NoneWithinRadius:
      r.verdict = y.dim() < static_cast<std::size_t>(ctx.C)
                      ? Verdict::RankDeficient
                      : Verdict::NoneWithinRadius;
      break;
  }
  r.compatible_count =
      cfg.power.z_r() > 0
          ? static_cast<long>(enumerate_compatible(cb, nominal.t_aj, z_full).size())
          : static_cast<long>(cb.size());
  const Subspace x_sub = cb.encode(m);
  const Subspace z_span = Subspace::from_matrix(tx.z);
  const Subspace jam_span = jam_rows ? Subspace::from_matrix(*jam_rows)
                                     : Subspace::zero(f, cfg.n);
  const ReceivedDecomposition dd = decompose_received(x_sub, y, z_span, jam_span);
  r.dim_ro = dd.dim_ro;
  r.dim_u = dd.dim_u;
  r.dim_jam = dd.dim_jam;
  return r;
}

inline SummaryStats summarize(const ExperimentConfig& cfg, const ExperimentContext& ctx,
                              const Codebook& cb, const std::vector<TrialResult>& trials) {
  SummaryStats s;
  s.trials = trials.size();
  double compat_sum = 0;
  for (const auto& t : trials) {
    ++s.verdict_histogram[static_cast<std::size_t>(t.verdict)];
    if (t.verdict != Verdict::Correct) ++s.errors;
    compat_sum += static_cast<double>(t.compatible_count);
  }
  s.error_probability =
      s.trials ? static_cast<double>(s.errors) / static_cast<double>(s.trials) : 0.0;
  s.wilson = wilson_interval(s.errors, s.trials);
  s.mean_compatible = s.trials ? compat_sum / static_cast<double>(s.trials) : 0.0;
  s.regime = classify_regime(ctx.C, cfg.power);
  s.capacity = necsim::capacity(ctx.C, cfg.power);
  s.secrecy_capacity = necsim::secrecy_capacity(ctx.C, cfg.power);
  s.codebook_collisions = cb.collision_count();
  s.effective_rate = cb.rate();
  return s;
}

}  // namespace detail

/// One Monte Carlo experiment with an explicit edge assignment (or the
/// config's assignment). Deterministic given the config and seed.
inline ExperimentResult run_trials(const ExperimentConfig& cfg,
                                   const std::optional<EdgeAssignment>& override_assignment =
                                       std::nullopt,
                                   std::uint64_t stream_salt = 0) {
  const auto ctx = detail::build_context(cfg);
  const EdgeAssignment assignment =
      override_assignment ? *override_assignment : cfg.assignment;
  validate_assignment(*ctx.topology, cfg.power, assignment);

  const Rng master(cfg.seed);
  std::optional<Codebook> fixed;
  if (cfg.codebook_load) {
    std::ifstream in(*cfg.codebook_load);
    if (!in) throw std::invalid_argument("config: cannot open " + *cfg.codebook_load);
    nlohmann::json j;
    in >> j;
    fixed.emplace(Codebook::from_json(j));
    if (fixed->n() != cfg.n || fixed->dim() != static_cast<std::size_t>(ctx.C) ||
        fixed->field() != *ctx.field)
      throw std::invalid_argument("config: loaded codebook does not match field/n/C");
  } else if (cfg.fixed_codebook) {
    Rng cb_rng = master.derived(0xC0DEB00C);
    fixed.emplace(Codebook::random(*ctx.field, cfg.n, ctx.C, cfg.codebook_size,
                                   cb_rng, cfg.distinct));
  }

  ExperimentResult result;
  result.c_overridden = cfg.c_override.has_value();
  result.trials.reserve(cfg.trials);
  std::size_t collisions_seen = 0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Rng trial_rng = master.derived(stream_salt * 0x10000000ULL + t);
    std::optional<Codebook> fresh;
    if (!fixed) {
      Rng cb_rng = trial_rng.derived(0xC0DEB00C);
      fresh.emplace(Codebook::random(*ctx.field, cfg.n, ctx.C, cfg.codebook_size,
                                     cb_rng, cfg.distinct));
    }
    const Codebook& cb = fixed ? *fixed : *fresh;
    collisions_seen = std::max(collisions_seen, cb.collision_count());
    result.trials.push_back(
        detail::run_one_trial(cfg, ctx, cb, assignment, t, std::move(trial_rng)));
  }
  if (fixed) {
    result.stats = detail::summarize(cfg, ctx, *fixed, result.trials);
  } else {
    Rng cb_rng = master.derived(0xC0DEB00C);
    const Codebook cb = Codebook::random(*ctx.field, cfg.n, ctx.C,
                                         cfg.codebook_size, cb_rng, cfg.distinct);
    result.stats = detail::summarize(cfg, ctx, cb, result.trials);
  }
  result.stats.codebook_collisions = collisions_seen;
  return result;
}

struct AssignmentRun {
  EdgeAssignment assignment;
  SummaryStats stats;
};

struct SweepResult {
  std::vector<AssignmentRun> runs;
  std::size_t worst_index = 0;  // highest error probability
};

/// Runs the experiment once per min-cut edge assignment and reports the
/// implemented-adversary worst case over assignments.
inline SweepResult run_sweep(const ExperimentConfig& cfg) {
  const auto ctx = detail::build_context(cfg);
  const auto assignments = enumerate_assignments(*ctx.topology, cfg.power);
  if (assignments.empty())
    throw std::invalid_argument("run_sweep: no feasible edge assignment");
  SweepResult sweep;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    ExperimentResult r = run_trials(cfg, assignments[i], i + 1);
    sweep.runs.push_back(AssignmentRun{assignments[i], r.stats});
    if (r.stats.error_probability > sweep.runs[sweep.worst_index].stats.error_probability)
      sweep.worst_index = i;
  }
  return sweep;
}

inline void emit_csv(const std::vector<TrialResult>& trials, std::ostream& os) {
  os << "trial,message,verdict,compatible_count,dim_ro,dim_u,dim_jam\n";
  for (const auto& t : trials)
    os << t.trial << ',' << t.message << ',' << verdict_name(t.verdict) << ','
       << t.compatible_count << ',' << t.dim_ro << ',' << t.dim_u << ','
       << t.dim_jam << '\n';
}

inline nlohmann::json stats_json(const SummaryStats& s) {
  nlohmann::json hist;
  for (std::size_t v = 0; v < s.verdict_histogram.size(); ++v)
    hist[verdict_name(static_cast<Verdict>(v))] = s.verdict_histogram[v];
  return nlohmann::json{{"trials", s.trials},
                        {"errors", s.errors},
                        {"error_probability", s.error_probability},
                        {"wilson95", {s.wilson.low, s.wilson.high}},
                        {"verdicts", hist},
                        {"mean_compatible", s.mean_compatible},
                        {"regime", regime_name(s.regime)},
                        {"capacity", s.capacity},
                        {"secrecy_capacity", s.secrecy_capacity},
                        {"codebook_collisions", s.codebook_collisions},
                        {"effective_rate", s.effective_rate}};
}

inline nlohmann::json summary_json(const ExperimentConfig& cfg, const SummaryStats& s) {
  nlohmann::json j{{"version", kVersion},
                   {"seed", cfg.seed},
                   {"config", cfg.to_json()},
                   {"summary", stats_json(s)}};
  if (cfg.secrecy.enabled) {
    try {
      Field sym(cfg.p, cfg.e * cfg.secrecy.ell);
      const CosetCode code =
          CosetCode::build_mds_parity(sym, cfg.secrecy.length, cfg.secrecy.z_r);
      bool all_perfect = true;
      double worst_h = static_cast<double>(cfg.secrecy.length - cfg.secrecy.z_r);
      // Every z_r-subset of coordinates must leak nothing.
      std::vector<int> idx(cfg.secrecy.z_r);
      std::function<void(int, int)> walk = [&](int pos, int start) {
        if (pos == cfg.secrecy.z_r) {
          const LeakageReport r = leakage_entropy(code, idx);
          all_perfect = all_perfect && r.perfect;
          worst_h = std::min(worst_h, r.h_m_given_z);
          return;
        }
        for (int i = start; i < cfg.secrecy.length; ++i) {
          idx[pos] = i;
          walk(pos + 1, i + 1);
        }
      };
      walk(0, 0);
      j["secrecy"] = {{"L", cfg.secrecy.length},
                      {"z_r", cfg.secrecy.z_r},
                      {"ell", cfg.secrecy.ell},
                      {"all_zr_subsets_perfect", all_perfect},
                      {"min_h_m_given_z", worst_h}};
    } catch (const budget_error& ex) {
      j["secrecy"] = {{"error", ex.what()}};
    }
  }
  return j;
}

/// Writes the per-trial CSV to `path` and the JSON summary next to it.
inline void emit_results(const ExperimentConfig& cfg, const ExperimentResult& result,
                         const std::string& path, const std::string& format = "csv") {
  if (format != "csv" && format != "json")
    throw std::invalid_argument("emit_results: format must be csv or json");
  const std::string csv_path = format == "csv" ? path : path + ".csv";
  const std::string json_path = format == "json" ? path : path + ".json";
  {
    std::ofstream os(csv_path, std::ios::binary);
    if (!os) throw std::runtime_error("emit_results: cannot open " + csv_path);
    emit_csv(result.trials, os);
  }
  {
    std::ofstream os(json_path, std::ios::binary);
    if (!os) throw std::runtime_error("emit_results: cannot open " + json_path);
    os << summary_json(cfg, result.stats).dump(2) << '\n';
  }
}

struct CapacityRow {
  int C;
  AdversaryPower power;
  Regime regime;
  long rate;
  long secure_rate;
};

inline std::vector<CapacityRow> capacity_table(int c_min, int c_max,
                                               const std::vector<AdversaryPower>& powers) {
  std::vector<CapacityRow> rows;
  for (int C = c_min; C <= c_max; ++C)
    for (const auto& p : powers)
      rows.push_back(CapacityRow{C, p, classify_regime(C, p), capacity(C, p),
                                 secrecy_capacity(C, p)});
  return rows;
}

struct CompatReport {
  CompatibleProbability probability;  // exact, by enumeration
  double expected_mean = 0;           // M * probability
  double empirical_mean = 0;
  long min_count = 0;
  double sigma_of_mean = 0;
  bool within_3sigma = false;
};

/// Monte Carlo cross-check of the exact compatible-codeword probability:
/// samples fresh i.i.d. codebooks and counts codewords matching the
/// canonical observation.
inline CompatReport compatible_count_experiment(const Field& f, int n, int C, int z_r,
                                                std::size_t M, std::size_t books,
                                                std::uint64_t seed) {
  CompatReport rep;
  rep.probability = compatible_probability(f, n, C, z_r);
  const double p = rep.probability.value();
  rep.expected_mean = static_cast<double>(M) * p;
  Matrix t(f, z_r, C);
  for (int i = 0; i < z_r; ++i) t.set(i, i, 1);
  Matrix x0(f, C, n);
  for (int i = 0; i < C; ++i) x0.set(i, i, 1);
  const Matrix z = t * x0;
  const Rng master(seed);
  double sum = 0;
  rep.min_count = static_cast<long>(M);
  for (std::size_t b = 0; b < books; ++b) {
    Rng rng = master.derived(b);
    const Codebook cb = Codebook::random(f, n, C, M, rng, false);
    const long count = static_cast<long>(enumerate_compatible(cb, t, z).size());
    sum += static_cast<double>(count);
    rep.min_count = std::min(rep.min_count, count);
  }
  rep.empirical_mean = sum / static_cast<double>(books);
  rep.sigma_of_mean =
      std::sqrt(static_cast<double>(M) * p * (1 - p) / static_cast<double>(books));
  rep.within_3sigma =
      std::abs(rep.empirical_mean - rep.expected_mean) <= 3 * rep.sigma_of_mean;
  return rep;
}

}  // namespace necsim

#endif
