// SPDX-License-Identifier: Apache-2.0

#include "acsia/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "acsia/channel_io.hpp"
#include "acsia/dof_bound.hpp"
#include "acsia/lemmas.hpp"
#include "acsia/rates.hpp"
#include "acsia/verify.hpp"

namespace acsia {

using json = nlohmann::ordered_json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

json channel_json(const ChannelMatrix& ch) {
  json links = json::array();
  for (int r = 0; r < ch.num_rx(); ++r)
    for (int t = 0; t < ch.num_tx(); ++t)
      links.push_back({{"rx", r + 1},
                       {"tx", t + 1},
                       {"magnitude", round_sig12(ch.magnitude(r, t))},
                       {"phase", round_sig12(ch.phase(r, t))}});
  return {{"num_rx", ch.num_rx()}, {"num_tx", ch.num_tx()}, {"links", links}};
}

const char* requirement_name(Requirement r) {
  switch (r) {
    case Requirement::NonZeroModPi: return "nonzero mod pi";
    case Requirement::ZeroModPi: return "zero mod pi";
    case Requirement::SingularCycle: return "ratio 1 and zero mod 2pi";
  }
  return "unknown";
}

json conditions_json(const ConditionReport& rep) {
  json records = json::array();
  for (const auto& c : rep.records) {
    json j = {{"id", c.id},
              {"expression", c.expression},
              {"requirement", requirement_name(c.requirement)},
              {"phase_sum", round_sig12(c.phase_sum)},
              {"distance", round_sig12(c.distance)}};
    if (c.magnitude_ratio) j["magnitude_ratio"] = round_sig12(*c.magnitude_ratio);
    j["pass"] = c.pass;
    records.push_back(std::move(j));
  }
  return {{"set", to_string(rep.set)}, {"records", records}, {"all_pass", rep.all_pass()}};
}

json independence_json(const IndependenceReport& rep) {
  json out = json::array();
  for (const auto& r : rep.receivers) {
    json sv = json::array();
    for (double s : r.singular_values) sv.push_back(round_sig12(s));
    out.push_back({{"rx", r.rx + 1},
                   {"rows", r.rows},
                   {"cols", r.cols},
                   {"singular_values", sv},
                   {"numerical_rank", r.numerical_rank},
                   {"min_principal_angle", round_sig12(r.min_principal_angle)},
                   {"status", to_string(r.status)}});
  }
  return out;
}

std::pair<int, int> channel_shape(const SweepTarget& target) {
  if (target.baseline) return {3, 3};
  const auto& d = describe(target.scheme);
  return {d.num_rx, d.num_tx};
}

struct RatePoint {
  double snr_db;
  double sum_rate;
  std::vector<double> user_rates;
};

struct TrialResult {
  std::uint64_t seed = 0;
  std::vector<RatePoint> points;
  std::optional<DofEstimate> dof;
  std::string skipped;
};

TrialResult run_trial(const ExperimentConfig& cfg, int trial) {
  TrialResult out;
  out.seed = trial_seed(cfg.master_seed, static_cast<std::uint64_t>(trial));
  const auto [rx, tx] = channel_shape(cfg.target);
  try {
    const ChannelMatrix ch = cfg.channel ? cfg.channel->load(rx, tx) : sample_channel(out.seed, tx, rx);
    std::function<RatePoint(double)> eval;
    std::optional<BeamformerSet> set;
    std::vector<StreamCombiner> combiners;
    if (cfg.target.baseline) {
      eval = [&](double db) {
        auto b = baseline_best_on_off(ch, db_to_linear(db));
        return RatePoint{db, b.sum_rate, std::move(b.user_rates)};
      };
    } else {
      set.emplace(build_scheme(cfg.target.scheme, ch, splitmix64(out.seed)));
      combiners = zf_receive(*set, ch);
      eval = [&](double db) {
        auto r = sum_rate(*set, ch, combiners, db_to_linear(db));
        return RatePoint{db, r.sum_rate, std::move(r.user_rates)};
      };
    }
    for (const double db : cfg.snr_grid_db) out.points.push_back(eval(db));
    out.dof = estimate_dof([&](double snr) {
      for (const auto& p : out.points)
        if (db_to_linear(p.snr_db) == snr) return p.sum_rate;
      throw std::logic_error("snr grid point not evaluated");
    }, cfg.snr_grid_db);
  } catch (const InfeasibleError& e) {
    out.points.clear();
    out.skipped = e.what();
  } catch (const RankDeficientError& e) {
    out.points.clear();
    out.skipped = e.what();
  }
  return out;
}

std::string csv_field(const std::optional<double>& v) { return v ? format_sig12(*v) : ""; }

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  return splitmix64(splitmix64(master) ^ (trial * 0xd1b54a32d192ed03ULL));
}

double round_sig12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  return std::strtod(format_sig12(x).c_str(), nullptr);
}

std::string format_sig12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

ChannelMatrix ChannelSource::load(int num_rx, int num_tx) const {
  ChannelMatrix ch = [&] {
    switch (kind) {
      case Kind::Seed: return sample_channel(seed, num_tx, num_rx);
      case Kind::Special: return construct_special_channel(special);
      case Kind::File: return read_channel_file(path);
    }
    throw std::logic_error("ChannelSource: unknown kind");
  }();
  if (ch.num_rx() != num_rx || ch.num_tx() != num_tx)
    throw std::invalid_argument("channel is " + std::to_string(ch.num_rx()) + "x" + std::to_string(ch.num_tx()) +
                                ", scheme needs " + std::to_string(num_rx) + "x" + std::to_string(num_tx));
  return ch;
}

json ChannelSource::describe() const {
  switch (kind) {
    case Kind::Seed: return {{"source", "seed"}, {"seed", seed}};
    case Kind::Special: return {{"source", "special"}, {"kind", to_string(special)}};
    case Kind::File: return {{"source", "file"}, {"path", path}};
  }
  return {};
}

std::string SweepTarget::name() const { return baseline ? "baseline" : std::string(to_string(scheme)); }

SweepTarget SweepTarget::parse(std::string_view name) {
  if (name == "baseline") return {true, SchemeKind::AcsIc3};
  return {false, parse_scheme(name)};
}

RunResult run_verify(const ExperimentConfig& cfg) {
  if (cfg.target.baseline) throw std::invalid_argument("verify: baseline has no alignment conditions");
  const SchemeDescriptor& desc = describe(cfg.target.scheme);
  const ChannelSource source = cfg.channel.value_or(ChannelSource{});
  const ChannelMatrix ch = source.load(desc.num_rx, desc.num_tx);

  json report;
  report["scheme"] = to_string(cfg.target.scheme);
  report["builder_seed"] = cfg.builder_seed;
  report["channel"] = source.describe();
  report["channel"]["matrix"] = channel_json(ch);
  const ConditionReport cond = check_conditions(ch, desc.conditions);
  report["conditions"] = conditions_json(cond);
  if (ch.num_rx() == 3 && ch.num_tx() == 3)
    report["singular_conditions"] = conditions_json(check_conditions(ch, ConditionSet::Singular));

  bool pass = cond.all_pass();
  if (pass) {
    try {
      const BeamformerSet set = build_scheme(cfg.target.scheme, ch, cfg.builder_seed);
      const double residual = alignment_residual(set, ch);
      const IndependenceReport indep = independence_margin(set, ch);
      report["claimed_dof"] = std::to_string(set.claimed_dof().numerator()) + "/" +
                              std::to_string(set.claimed_dof().denominator());
      report["alignment_residual"] = round_sig12(residual);
      report["independence"] = independence_json(indep);
      pass = residual <= kAlignmentTolerance && indep.all_independent();
    } catch (const std::exception& e) {
      report["error"] = e.what();
      pass = false;
    }
  } else {
    report["failed_conditions"] = cond.failed();
  }
  report["pass"] = pass;
  return {pass ? kExitOk : kExitChecksFailed, report.dump(2) + "\n"};
}

RunResult run_sweep(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("sweep: trial count must be >= 1");
  validate_snr_grid(cfg.snr_grid_db);

  std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));
  const int workers = std::max(1, std::min(cfg.threads, cfg.trials));
  if (workers == 1) {
    for (int i = 0; i < cfg.trials; ++i) results[static_cast<std::size_t>(i)] = run_trial(cfg, i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int i = next++; i < cfg.trials; i = next++) results[static_cast<std::size_t>(i)] = run_trial(cfg, i);
      });
    for (auto& t : pool) t.join();
  }

  const std::string scheme = cfg.target.name();
  std::ostringstream out;
  if (cfg.format == OutputFormat::Csv) {
    out << "scheme,seed,snr_db,sum_rate_bpcu,per_user_rates,trial,record,dof_slope,dof_intercept,dof_residual,note\n";
    for (int i = 0; i < cfg.trials; ++i) {
      const auto& r = results[static_cast<std::size_t>(i)];
      const std::string lead = scheme + "," + std::to_string(r.seed) + ",";
      if (!r.skipped.empty()) {
        out << lead << ",,," << i << ",skipped,,,," << csv_quote(r.skipped) << "\n";
        continue;
      }
      for (const auto& p : r.points) {
        std::string users;
        for (std::size_t u = 0; u < p.user_rates.size(); ++u) users += (u ? ";" : "") + format_sig12(p.user_rates[u]);
        out << lead << format_sig12(p.snr_db) << "," << format_sig12(p.sum_rate) << "," << users << "," << i
            << ",rate,,,,\n";
      }
      out << lead << ",,," << i << ",dof," << csv_field(r.dof->slope) << "," << csv_field(r.dof->intercept) << ","
          << csv_field(r.dof->residual) << ",\n";
    }
  } else {
    for (int i = 0; i < cfg.trials; ++i) {
      const auto& r = results[static_cast<std::size_t>(i)];
      if (!r.skipped.empty()) {
        json j = {{"scheme", scheme}, {"seed", r.seed}, {"trial", i}, {"record", "skipped"}, {"note", r.skipped}};
        out << j.dump() << "\n";
        continue;
      }
      for (const auto& p : r.points) {
        json users = json::array();
        for (double u : p.user_rates) users.push_back(round_sig12(u));
        json j = {{"scheme", scheme},
                  {"seed", r.seed},
                  {"snr_db", round_sig12(p.snr_db)},
                  {"sum_rate_bpcu", round_sig12(p.sum_rate)},
                  {"per_user_rates", users},
                  {"trial", i},
                  {"record", "rate"}};
        out << j.dump() << "\n";
      }
      json grid = json::array();
      for (double g : r.dof->snr_db) grid.push_back(round_sig12(g));
      json j = {{"scheme", scheme},
                {"seed", r.seed},
                {"trial", i},
                {"record", "dof"},
                {"snr_grid_db", grid},
                {"dof_slope", round_sig12(r.dof->slope)},
                {"dof_intercept", round_sig12(r.dof->intercept)},
                {"dof_residual", round_sig12(r.dof->residual)}};
      out << j.dump() << "\n";
    }
  }
  return {kExitOk, out.str()};
}

RunResult run_bound(const ExperimentConfig& cfg) {
  if (cfg.s_min < 1 || cfg.s_max < cfg.s_min) throw std::invalid_argument("bound: need 1 <= s-min <= s-max");
  if (cfg.s_max > kMaxExhaustiveExtension)
    throw std::length_error("bound: s-max " + std::to_string(cfg.s_max) + " exceeds the exhaustive limit " +
                            std::to_string(kMaxExhaustiveExtension));
  const Ratio limit(6, 5);
  bool within = true;
  json rows = json::array();
  for (int s = cfg.s_min; s <= cfg.s_max; ++s) {
    const BoundResult res = max_dof(s);
    json argmax = json::array();
    for (const auto& p : res.argmax)
      argmax.push_back({{"d", {p.d[0], p.d[1], p.d[2]}}, {"d12", p.d12}, {"d23", p.d23}, {"d31", p.d31}});
    const bool ok = res.best <= limit;
    within = within && ok;
    rows.push_back({{"S", s},
                    {"max_ratio", std::to_string(res.best.numerator()) + "/" + std::to_string(res.best.denominator())},
                    {"max_ratio_value", round_sig12(boost::rational_cast<double>(res.best))},
                    {"within_six_fifths", ok},
                    {"feasible_profiles", res.feasible_count},
                    {"argmax", argmax}});
  }
  json report = {{"rows", rows}, {"all_within_six_fifths", within}};
  return {within ? kExitOk : kExitChecksFailed, report.dump(2) + "\n"};
}

RunResult run_demo_containment(const ExperimentConfig& cfg) {
  const ChannelSource source = cfg.channel.value_or(ChannelSource{});
  const ChannelMatrix ch = source.load(3, 3);
  json report;
  report["channel"] = source.describe();
  report["builder_seed"] = cfg.builder_seed;
  try {
    const ContainmentDemo demo = demonstrate_double_alignment(ch, cfg.builder_seed);
    const auto arr = [](const std::vector<double>& v) {
      json a = json::array();
      for (double x : v) a.push_back(round_sig12(x));
      return a;
    };
    report["extension"] = demo.extension;
    report["alpha"] = round_sig12(demo.alpha);
    report["beta"] = round_sig12(demo.beta);
    report["c1"] = round_sig12(demo.c.c1);
    report["c2"] = round_sig12(demo.c.c2);
    report["a"] = arr(demo.a);
    report["b"] = arr(demo.b);
    report["a_prime"] = arr(demo.a_prime);
    report["b_prime"] = arr(demo.b_prime);
    report["alignment_residual"] = round_sig12(demo.alignment_residual);
    report["containment_residual"] = round_sig12(demo.containment_residual);
    const bool pass = demo.alignment_residual <= kAlignmentTolerance && demo.containment_residual <= kAlignmentTolerance;
    report["pass"] = pass;
    return {pass ? kExitOk : kExitChecksFailed, report.dump(2) + "\n"};
  } catch (const std::domain_error& e) {
    report["error"] = e.what();
    report["pass"] = false;
    return {kExitChecksFailed, report.dump(2) + "\n"};
  }
}

}  // namespace acsia
