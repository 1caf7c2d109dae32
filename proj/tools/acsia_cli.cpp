// SPDX-License-Identifier: Apache-2.0
//
// acsia: verification, rate sweeps and stream-allocation bounds for
// alignment schemes on the three-user interference channel.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "acsia/experiment.hpp"
#include "acsia/rates.hpp"

namespace {

using namespace acsia;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "60,70,80" or "60:110:10"
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::istringstream in(text);
    double start = 0, stop = 0, step = 0;
    char c1 = 0, c2 = 0;
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 || stop < start)
      throw UsageError("--snr-db: expected start:stop:step with step > 0");
    const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (int i = 0; i < n; ++i) out.push_back(start + i * step);
    return out;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--snr-db: cannot parse '" + item + "'");
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& output, const std::string& default_name) {
  std::string path = output;
  if (path.empty()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) path = (std::filesystem::path(dir) / default_name).string();
  }
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alignment schemes with asymmetric complex signaling on the 3-user interference channel"};
  app.require_subcommand(1);

  std::string scheme = "acs-ic3";
  std::uint64_t channel_seed = 0;
  std::string special;
  std::string channel_file;
  std::uint64_t builder_seed = 1;
  std::string output;
  std::string snr_db;
  int trials = 1;
  std::uint64_t master_seed = 1;
  std::string format = "jsonl";
  int threads = 1;
  int s_min = 1;
  int s_max = 10;

  const auto add_channel_flags = [&](CLI::App* sub) {
    auto* seed_opt = sub->add_option("--channel-seed", channel_seed, "Draw a Rayleigh channel from this seed");
    auto* special_opt = sub->add_option("--special", special,
                                        "phase-example | plus-minus-one | all-ones | singular-<1..6> | "
                                        "acs-degenerate-<1..6>");
    auto* file_opt = sub->add_option("--channel-file", channel_file, "Read the channel from a text file");
    seed_opt->excludes(special_opt)->excludes(file_opt);
    special_opt->excludes(file_opt);
    return seed_opt;
  };

  auto* verify = app.add_subcommand("verify", "Check conditions, alignment and receiver independence");
  verify->add_option("--scheme", scheme, "phase-align | acs-ic3 | x-channel | cognitive-x | uplinks");
  add_channel_flags(verify);
  verify->add_option("--seed", builder_seed, "Seed for the free beamformer columns");
  verify->add_option("--output", output, "Report path ('-' for stdout)");

  auto* sweep = app.add_subcommand("sweep", "Sum rate against SNR and the fitted DoF slope");
  sweep->add_option("--scheme", scheme, "Scheme name or 'baseline'");
  add_channel_flags(sweep);
  sweep->add_option("--trials", trials, "Number of random channels")->check(CLI::PositiveNumber);
  sweep->add_option("--master-seed", master_seed, "Seed from which every trial seed is derived");
  sweep->add_option("--snr-db", snr_db, "Comma list or start:stop:step (default 60:110:10)");
  sweep->add_option("--format", format, "csv | jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  sweep->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--output", output, "Report path ('-' for stdout)");

  auto* bound = app.add_subcommand("bound", "Exhaustive stream-allocation bound per extension length");
  bound->add_option("--s-min", s_min, "Smallest extension");
  bound->add_option("--s-max", s_max, "Largest extension");
  bound->add_option("--output", output, "Report path ('-' for stdout)");

  auto* demo = app.add_subcommand("demo-lemma2", "Show that double alignment forces self-interference");
  add_channel_flags(demo);
  demo->add_option("--seed", builder_seed, "Seed for transmitter 2 and 3 vectors");
  demo->add_option("--output", output, "Report path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  ExperimentConfig cfg;
  try {
    if (active != bound) {
      if (active->count("--channel-seed")) {
        cfg.channel = ChannelSource{ChannelSource::Kind::Seed, channel_seed, {}, {}};
      } else if (!special.empty()) {
        cfg.channel = ChannelSource{ChannelSource::Kind::Special, 0, parse_special_channel(special), {}};
      } else if (!channel_file.empty()) {
        cfg.channel = ChannelSource{ChannelSource::Kind::File, 0, {}, channel_file};
      }
    }
    cfg.builder_seed = builder_seed;
    if (active == verify || active == sweep) cfg.target = SweepTarget::parse(scheme);
    cfg.trials = trials;
    cfg.master_seed = master_seed;
    cfg.threads = threads;
    cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::JsonLines;
    cfg.snr_grid_db = snr_db.empty() ? default_snr_grid_db() : parse_grid(snr_db);
    cfg.s_min = s_min;
    cfg.s_max = s_max;
    if (active == sweep) validate_snr_grid(cfg.snr_grid_db);
    if (active == bound && (s_min < 1 || s_max < s_min)) throw UsageError("bound: need 1 <= --s-min <= --s-max");
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    RunResult res;
    std::string name;
    if (active == verify) {
      res = run_verify(cfg);
      name = "verify.json";
    } else if (active == sweep) {
      res = run_sweep(cfg);
      name = std::string("sweep-") + cfg.target.name() + (cfg.format == OutputFormat::Csv ? ".csv" : ".jsonl");
    } else if (active == bound) {
      res = run_bound(cfg);
      name = "bound.json";
    } else {
      res = run_demo_containment(cfg);
      name = "demo-lemma2.json";
    }
    emit(res.output, output, name);
    return res.status;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitChecksFailed;
  }
}
