// Copyright 2026 The patrolnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PATROLNET_COMMISSIONER_HPP
#define PATROLNET_COMMISSIONER_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "patrolnet/aggregator.hpp"
#include "patrolnet/anonymizer.hpp"
#include "patrolnet/model.hpp"
#include "patrolnet/pattern_repo.hpp"
#include "patrolnet/simulator.hpp"

namespace patrolnet {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitInfeasible = 3,
};

struct CommissionerConfig {
  AnonParams anon;
  std::optional<double> epsilon;  ///< defaults to anon.delta
  std::optional<Tick> tau;        ///< defaults to anon.pi
  std::uint64_t seed = 42;
  std::optional<std::filesystem::path> registry;
  std::filesystem::path repo = "patterns.txt";
  std::optional<std::filesystem::path> data;
  std::filesystem::path output = "anonymized.txt";
  bool replay_guard = false;
  SimConfig sim;

  DedupParams dedup() const {
    return {epsilon.value_or(anon.delta), tau.value_or(anon.pi)};
  }
};

/// Applies "key = value" lines ('#' comments allowed) on top of `config`.
/// Throws ParseError on unknown keys or bad values.
void apply_config(std::istream& in, CommissionerConfig& config);
void apply_config_file(const std::filesystem::path& path, CommissionerConfig& config);

/// The commissioner console. Every action writes its report to `out`;
/// prompts are only shown by the interactive loop.
class Commissioner {
 public:
  Commissioner(CommissionerConfig config, std::istream& in, std::ostream& out, std::ostream& err);

  /// Echo each line read from the input after its prompt, so scripted
  /// sessions print like a terminal transcript.
  void set_echo_input(bool echo) { echo_input_ = echo; }

  /// Menu-driven session: RFID detection, then choices 1/2/3 until 3.
  int main_loop();

  int detect(std::span<const Rfid> ids);
  /// Aggregates the officers' uploads for one zone and stores the patterns.
  /// Nothing is written when any step fails.
  int process(int zone_id, const std::vector<std::filesystem::path>& files);
  /// Anonymizes the configured dataset with the given k and delta and
  /// writes the published trajectories to the configured output.
  int obfuscate(std::size_t k, double delta);

  const CommissionerConfig& config() const { return config_; }

 private:
  const Registry* registry();
  Repository& repository();
  std::optional<std::string> prompt(const std::string& text);
  void print_detection(const Classification& c);
  int run_process_menu();
  int run_obfuscate_menu();

  CommissionerConfig config_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  bool echo_input_ = false;
  std::optional<Registry> registry_;
  std::optional<Repository> repo_;
  std::optional<Classification> detected_;
};

/// Full command line: global flags, an optional subcommand (detect,
/// process, obfuscate, simulate, query, bench) or the interactive session.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err, bool interactive_terminal = false);

/// Parses "a..b" or "a" into an inclusive list of seeds.
std::vector<std::uint64_t> parse_seed_range(const std::string& text);

}  // namespace patrolnet

#endif  // PATROLNET_COMMISSIONER_HPP
