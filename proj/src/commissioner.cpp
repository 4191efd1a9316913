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

#include "patrolnet/commissioner.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "patrolnet/anonymity_audit.hpp"
#include "patrolnet/comparison.hpp"
#include "patrolnet/errors.hpp"
#include "patrolnet/topology.hpp"
#include "text_util.hpp"

namespace patrolnet {
namespace {

constexpr std::string_view kMenu =
    "Choose: 1.Process officers' data      2.obfuscate data to criminals  3.Exit\n";

std::string trim_ws(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_bool(std::string_view v, std::size_t line_no) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ParseError(line_no, fmt::format("bad boolean \"{}\"", v));
}

// Writes through a sibling temporary so readers never see a partial file.
void write_atomically(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw PersistenceError(fmt::format("cannot write {}", tmp.string()));
    out << content;
    out.flush();
    if (!out) throw PersistenceError(fmt::format("write to {} failed", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw PersistenceError(fmt::format("cannot replace {}", path.string()));
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim_ws(item);
    if (!item.empty()) out.push_back(detail::parse_real(item, 0, "list value"));
  }
  if (out.empty()) throw ParameterError(fmt::format("empty list \"{}\"", text));
  return out;
}

void print_records(std::ostream& out, const std::vector<PatternRecord>& records, bool tsv) {
  const std::vector<std::string> header{"criminal", "crime_number", "zone",  "first",
                                        "last",     "min_x",        "min_y", "max_x",
                                        "max_y",    "centroid_x",   "centroid_y"};
  std::vector<std::vector<std::string>> rows{header};
  for (const auto& r : records) {
    rows.push_back({std::to_string(r.criminal.value), std::to_string(r.crime_number),
                    std::to_string(r.zone_id), std::to_string(r.first_tick),
                    std::to_string(r.last_tick), fmt::format("{}", r.region.min_x),
                    fmt::format("{}", r.region.min_y), fmt::format("{}", r.region.max_x),
                    fmt::format("{}", r.region.max_y), fmt::format("{}", r.centroid.x),
                    fmt::format("{}", r.centroid.y)});
  }
  if (tsv) {
    for (const auto& row : rows) out << fmt::format("{}\n", fmt::join(row, "\t"));
    return;
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += fmt::format("{:<{}}", row[c], width[c] + (c + 1 < row.size() ? 2 : 0));
    }
    out << trim_ws(line) << '\n';
  }
}

}  // namespace

void apply_config(std::istream& in, CommissionerConfig& config) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim_ws(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected key = value");
    const std::string key = trim_ws(std::string_view(text).substr(0, eq));
    const std::string value = trim_ws(std::string_view(text).substr(eq + 1));
    auto real = [&] { return detail::parse_real(value, line_no, key); };
    auto count = [&] { return detail::parse_uint<std::uint64_t>(value, line_no, key); };

    if (key == "k") config.anon.k = count();
    else if (key == "delta") config.anon.delta = real();
    else if (key == "pi") config.anon.pi = static_cast<Tick>(count());
    else if (key == "max_radius") config.anon.max_radius = real();
    else if (key == "delta_max") config.anon.delta_max = real();
    else if (key == "trash_max") config.anon.trash_max = real();
    else if (key == "epsilon") config.epsilon = real();
    else if (key == "tau") config.tau = static_cast<Tick>(count());
    else if (key == "seed") config.seed = count();
    else if (key == "registry") config.registry = value;
    else if (key == "repo") config.repo = value;
    else if (key == "data") config.data = value;
    else if (key == "output") config.output = value;
    else if (key == "replay_guard") config.replay_guard = parse_bool(value, line_no);
    else if (key == "ttl") config.sim.ttl_init = static_cast<int>(count());
    else if (key == "shares") config.sim.shares = static_cast<int>(count());
    else if (key == "threshold") config.sim.threshold = static_cast<int>(count());
    else if (key == "mac_rate") config.sim.mac_service_rate = static_cast<int>(count());
    else if (key == "traffic_ticks") config.sim.traffic_ticks = static_cast<Tick>(count());
    else if (key == "duration") config.sim.duration = static_cast<Tick>(count());
    else throw ParseError(line_no, fmt::format("unknown key \"{}\"", key));
  }
}

void apply_config_file(const std::filesystem::path& path, CommissionerConfig& config) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  apply_config(in, config);
}

std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  const auto num = [](std::string_view s) { return detail::parse_uint<std::uint64_t>(s, 0, "seed"); };
  if (dots == std::string::npos) return {num(trim_ws(text))};
  const auto lo = num(trim_ws(text.substr(0, dots)));
  const auto hi = num(trim_ws(text.substr(dots + 2)));
  if (hi < lo) throw ParameterError(fmt::format("empty seed range \"{}\"", text));
  std::vector<std::uint64_t> out;
  for (auto s = lo; s <= hi; ++s) out.push_back(s);
  return out;
}

Commissioner::Commissioner(CommissionerConfig config, std::istream& in, std::ostream& out,
                           std::ostream& err)
    : config_(std::move(config)), in_(in), out_(out), err_(err) {}

const Registry* Commissioner::registry() {
  if (!registry_) {
    if (!config_.registry) {
      err_ << "error: no registry configured (use --registry)\n";
      return nullptr;
    }
    registry_ = load_registry(*config_.registry);
  }
  return &*registry_;
}

Repository& Commissioner::repository() {
  if (!repo_) repo_.emplace(config_.repo);
  return *repo_;
}

std::optional<std::string> Commissioner::prompt(const std::string& text) {
  out_ << text << std::flush;
  std::string line;
  if (!std::getline(in_, line)) {
    out_ << '\n';
    return std::nullopt;
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (echo_input_) out_ << line << '\n';
  return line;
}

void Commissioner::print_detection(const Classification& c) {
  std::string officers = "Police Officers detected:";
  for (const Rfid id : c.officers) officers += fmt::format("{:>9}", id.value);
  std::string criminals = "Criminals detected:   ";
  for (const Rfid id : c.criminals) criminals += fmt::format("{:>9}", id.value);
  out_ << officers << '\n' << criminals << '\n';
}

int Commissioner::detect(std::span<const Rfid> ids) {
  const Registry* reg = registry();
  if (!reg) return kExitData;
  detected_ = classify_ids(ids, *reg);
  print_detection(*detected_);
  return kExitOk;
}

int Commissioner::process(int zone_id, const std::vector<std::filesystem::path>& files) {
  if (files.empty()) {
    err_ << "usage: process --zone Z FILE...\n";
    return kExitUsage;
  }
  try {
    const Registry* reg = registry();
    if (!reg) return kExitData;
    const auto zone = reg->zones.find(zone_id);
    if (zone == reg->zones.end()) {
      err_ << fmt::format("error: unknown zone {}\n", zone_id);
      return kExitData;
    }

    std::vector<std::string> contents{std::to_string(zone_id)};
    for (const auto& f : files) contents.push_back(read_file(f));
    const std::uint64_t fingerprint = batch_fingerprint(contents);
    Repository& repo = repository();
    if (config_.replay_guard && repo.has_batch(fingerprint)) {
      out_ << "duplicate batch, skipped\n";
      return kExitOk;
    }

    std::vector<Report> reports;
    for (std::size_t i = 0; i < files.size(); ++i) {
      std::istringstream text(contents[i + 1]);
      Dataset upload;
      try {
        upload = parse_trajectories(text);
      } catch (const ParseError& e) {
        throw ParseError(e.line(), fmt::format("{}: {}", files[i].string(), e.detail()));
      }
      auto part = reports_from_upload(upload, *reg, zone_id, static_cast<Tick>(i));
      reports.insert(reports.end(), part.begin(), part.end());
    }
    const auto summaries = aggregate_zone(zone->second, reports, config_.dedup());
    const auto records = identify_pattern(zone->second, summaries, repo);
    repo.store(records, config_.replay_guard ? std::optional(fingerprint) : std::nullopt);

    out_ << "\nData is aggregated.\n\n"
         << "Using a context aware pattern, criminals details are recorded.\n";
    err_ << fmt::format("Records stored: {} ({} reports, {} summaries)\n", records.size(),
                        reports.size(), summaries.size());
    return kExitOk;
  } catch (const Error& e) {
    err_ << "error: " << e.what() << '\n';
    return kExitData;
  }
}

int Commissioner::obfuscate(std::size_t k, double delta) {
  AnonParams params = config_.anon;
  params.k = k;
  params.delta = delta;
  try {
    params.validate();
  } catch (const ParameterError& e) {
    err_ << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!config_.data) {
    err_ << "error: load data first (no trajectory dataset configured, use --data)\n";
    return kExitData;
  }

  out_ << "Parameters:\n"
       << fmt::format("K={}, delta={}, pi={}, delta_max={:.3f}, trash_max={:.1f}%\n", params.k,
                      params.delta, params.pi, params.delta_max, 100.0 * params.trash_max)
       << "Loading data...\n";
  Dataset dataset;
  try {
    dataset = load_trajectories(*config_.data);
  } catch (const Error& e) {
    err_ << "error: " << e.what() << '\n';
    return kExitData;
  }
  const DatasetSummary summary = summarize(dataset);
  out_ << "Loading objects... Done.\n"
       << fmt::format("-> Trajectories: {}, Points: {}, Diameter: {:.3f}\n", summary.trajectories,
                      summary.points, summary.diameter);

  AnonymizedDataset result;
  try {
    result = anonymize(dataset, params, config_.seed);
  } catch (const InfeasibleAnonymity& e) {
    out_ << fmt::format("Anonymity infeasible: {} (trash fraction {:.1f}%)\n", e.what(),
                        100.0 * e.trash_fraction());
    return kExitInfeasible;
  }
  const auto& s = result.stats;
  out_ << fmt::format("-> Removed Trajectories: {}, Removed Points: {}\n", s.removed_trajectories,
                      s.removed_points)
       << "Creating equivalence classes...Done.\n"
       << fmt::format("Processing equivalence classes: Done! [ {} equiv. classes ]\n",
                      s.equivalence_classes)
       << fmt::format("-> Clusters: {}, Trashed Trajectories: {}, Trashed Points: {}\n",
                      s.clusters, s.trashed_trajectories, s.trashed_points);

  const auto issues = audit_anonymity(result, params);
  if (!issues.empty()) {
    err_ << fmt::format("error: anonymity audit failed: {}\n", issues.front());
    return kExitData;
  }
  try {
    std::ostringstream text;
    write_anonymized(text, result, params, config_.seed);
    write_atomically(config_.output, text.str());
  } catch (const Error& e) {
    err_ << "error: " << e.what() << '\n';
    return kExitData;
  }
  out_ << fmt::format("-> Anonymized data written to {}\n", config_.output.string());
  return kExitOk;
}

int Commissioner::run_process_menu() {
  const auto zone_text = prompt("Enter the zone number:");
  if (!zone_text) return kExitOk;
  int zone_id = 0;
  try {
    zone_id = detail::parse_uint<int>(trim_ws(*zone_text), 0, "zone");
  } catch (const ParseError&) {
    out_ << "Invalid zone number.\n";
    return kExitOk;
  }
  const Registry* reg = registry();
  if (!reg) return kExitData;
  const auto zone = reg->zones.find(zone_id);
  if (zone == reg->zones.end()) {
    out_ << fmt::format("Unknown zone {}.\n", zone_id);
    return kExitOk;
  }
  std::vector<std::string> ids;
  for (const Rfid id : zone->second.officer_ids) ids.push_back(std::to_string(id.value));
  out_ << fmt::format("\nPolice officers assigned to this zone are: {}\n", fmt::join(ids, " "));

  std::vector<std::filesystem::path> files;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto name = prompt("Enter filename: ");
    if (!name) return kExitOk;
    files.emplace_back(trim_ws(*name));
  }
  if (process(zone_id, files) == kExitOk) {
    out_ << "Press a key.\n";
    if (!echo_input_) {
      std::string ignored;
      std::getline(in_, ignored);
    }
  }
  return kExitOk;
}

int Commissioner::run_obfuscate_menu() {
  out_ << "\nOBFUSCATING DATA - to achieve LOCATION PRIVACY\n@ POLICE COMMISSIONER End:\n";
  const auto line = prompt("Enter the anonymity level and the uncertainty: ");
  if (!line) return kExitOk;
  const auto tokens = detail::split_ws(*line);
  std::size_t k = 0;
  double delta = 0.0;
  try {
    if (tokens.size() != 2) throw ParseError(0, "two values expected");
    k = detail::parse_uint<std::size_t>(tokens[0], 0, "anonymity level");
    delta = detail::parse_real(tokens[1], 0, "uncertainty");
  } catch (const ParseError&) {
    out_ << "Enter an integer anonymity level and a real uncertainty.\n";
    return kExitOk;
  }
  obfuscate(k, delta);
  return kExitOk;
}

int Commissioner::main_loop() {
  if (!registry()) return kExitData;
  out_ << "Detecting RFID:\n";
  while (!detected_) {
    const auto line = prompt("Enter the requesting ids:");
    if (!line) return kExitOk;
    std::vector<Rfid> ids;
    try {
      for (const auto token : detail::split_ws(*line)) {
        ids.push_back(Rfid{detail::parse_uint<std::uint32_t>(token, 0, "id")});
      }
    } catch (const ParseError&) {
      out_ << "RFIDs must be non-negative integers.\n";
      continue;
    }
    if (ids.empty()) continue;
    detect(ids);
  }

  for (;;) {
    out_ << kMenu;
    const auto choice = prompt("Choice:");
    if (!choice) return kExitOk;
    const std::string c = trim_ws(*choice);
    if (c == "1") {
      run_process_menu();
    } else if (c == "2") {
      run_obfuscate_menu();
    } else if (c == "3") {
      return kExitOk;
    }
  }
}

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err, bool interactive_terminal) {
  CLI::App app{"Police-patrol commissioner console", "commissioner"};
  std::string config_path, registry_path, repo_path, data_path, output_path;
  std::uint64_t seed = 0;
  auto* opt_config = app.add_option("--config", config_path, "key=value configuration file");
  auto* opt_registry = app.add_option("--registry", registry_path, "officer registry file");
  auto* opt_repo = app.add_option("--repo", repo_path, "pattern repository file");
  auto* opt_seed = app.add_option("--seed", seed, "random seed for obfuscation");
  auto* opt_data = app.add_option("--data", data_path, "trajectory dataset to obfuscate");
  auto* opt_output = app.add_option("--out", output_path, "anonymized output file");
  bool echo = false;
  app.add_flag("--echo", echo, "echo scripted input after each prompt");

  auto* detect_cmd = app.add_subcommand("detect", "classify requesting RFIDs");
  std::vector<std::uint32_t> detect_ids;
  detect_cmd->add_option("ids", detect_ids, "requesting ids")->required();

  auto* process_cmd = app.add_subcommand("process", "aggregate officer uploads for a zone");
  int zone_id = 0;
  std::vector<std::string> files;
  bool replay_guard = false;
  process_cmd->add_option("--zone", zone_id, "zone number")->required();
  process_cmd->add_option("files", files, "officer upload files");
  process_cmd->add_flag("--replay-guard", replay_guard, "skip batches already stored");

  auto* obfuscate_cmd = app.add_subcommand("obfuscate", "anonymize the trajectory dataset");
  std::size_t k = 0;
  double delta = 0.0;
  obfuscate_cmd->add_option("--k", k, "anonymity level (cluster size)")->required();
  obfuscate_cmd->add_option("--delta", delta, "uncertainty diameter")->required();

  auto* simulate_cmd = app.add_subcommand("simulate", "randomized vs shortest-path sweep");
  std::string topology_path, seeds_text = "0..19", loads_text, plot_path;
  SimConfig sim_flags;
  std::vector<NodeId> sources;
  bool allow_backtrack = false;
  simulate_cmd->add_option("--topology", topology_path, "topology file")->required();
  simulate_cmd->add_option("--seeds", seeds_text, "seed range a..b");
  simulate_cmd->add_option("--loads", loads_text, "comma-separated report rates")->required();
  auto* opt_ttl = simulate_cmd->add_option("--ttl", sim_flags.ttl_init, "random relay hops");
  auto* opt_shares = simulate_cmd->add_option("--shares", sim_flags.shares, "shares per report");
  auto* opt_threshold =
      simulate_cmd->add_option("--threshold", sim_flags.threshold, "shares needed to rebuild");
  auto* opt_rate =
      simulate_cmd->add_option("--rate", sim_flags.mac_service_rate, "packets per node per tick");
  auto* opt_traffic =
      simulate_cmd->add_option("--traffic-ticks", sim_flags.traffic_ticks, "traffic window");
  auto* opt_duration = simulate_cmd->add_option("--duration", sim_flags.duration, "total ticks");
  simulate_cmd->add_option("--sources", sources, "report source node ids")->delimiter(',');
  simulate_cmd->add_flag("--allow-backtrack", allow_backtrack,
                         "let random relays return to the previous hop");
  simulate_cmd->add_option("--plot", plot_path, "write tab-separated plot data here");

  auto* query_cmd = app.add_subcommand("query", "answer a query from the pattern repository");
  std::uint32_t q_criminal = 0, q_count = 0;
  int q_zone = 0;
  std::string q_window;
  bool tsv = false;
  auto* opt_qc = query_cmd->add_option("--criminal", q_criminal, "records of one criminal");
  auto* opt_qz = query_cmd->add_option("--zone", q_zone, "records of one zone");
  auto* opt_qn = query_cmd->add_option("--count", q_count, "incident count of one criminal");
  auto* opt_qw = query_cmd->add_option("--window", q_window, "records overlapping t0,t1");
  query_cmd->add_flag("--tsv", tsv, "tab-separated output");
  opt_qc->excludes(opt_qz, opt_qn, opt_qw);
  opt_qz->excludes(opt_qn, opt_qw);
  opt_qn->excludes(opt_qw);

  auto* bench_cmd = app.add_subcommand("bench", "time obfuscation and a routing sweep");
  std::string bench_topology;
  bench_cmd->add_option("--topology", bench_topology, "topology file for the routing sweep");

  app.require_subcommand(0, 1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  CommissionerConfig config;
  try {
    if (opt_config->count()) apply_config_file(config_path, config);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (opt_registry->count()) config.registry = registry_path;
  if (opt_repo->count()) config.repo = repo_path;
  if (opt_seed->count()) config.seed = seed;
  if (opt_data->count()) config.data = data_path;
  if (opt_output->count()) config.output = output_path;
  if (replay_guard) config.replay_guard = true;

  try {
    Commissioner console(config, in, out, err);
    console.set_echo_input(echo || !interactive_terminal);

    if (*detect_cmd) {
      std::vector<Rfid> ids;
      for (const auto id : detect_ids) ids.push_back(Rfid{id});
      return console.detect(ids);
    }
    if (*process_cmd) {
      return console.process(zone_id, {files.begin(), files.end()});
    }
    if (*obfuscate_cmd) return console.obfuscate(k, delta);

    if (*simulate_cmd) {
      const Topology topology = load_topology(topology_path);
      ComparisonGrid grid;
      grid.base = config.sim;
      if (opt_ttl->count()) grid.base.ttl_init = sim_flags.ttl_init;
      if (opt_shares->count()) grid.base.shares = sim_flags.shares;
      if (opt_threshold->count()) grid.base.threshold = sim_flags.threshold;
      if (opt_rate->count()) grid.base.mac_service_rate = sim_flags.mac_service_rate;
      if (opt_traffic->count()) grid.base.traffic_ticks = sim_flags.traffic_ticks;
      if (opt_duration->count()) grid.base.duration = sim_flags.duration;
      grid.base.sources = sources;
      grid.base.exclude_previous_hop = !allow_backtrack;
      grid.base.validate();
      grid.loads = parse_list(loads_text);
      grid.seeds = parse_seed_range(seeds_text);

      const ComparisonTable table = run_comparison(topology, grid);
      out << fmt::format("{:<8}{:<12}{:>14}{:>16}{:>14}\n", "load", "mode", "mean_latency",
                         "delivery_ratio", "seeds_won");
      for (const auto& row : table.rows) {
        std::size_t won = 0;
        for (const auto s : grid.seeds) {
          const Metrics& mine = table.cell(row.load, row.mode, s);
          const Metrics& other = table.cell(
              row.load,
              row.mode == RoutingMode::Randomized ? RoutingMode::ShortestPath
                                                  : RoutingMode::Randomized,
              s);
          if (mine.delivered_reports > 0 &&
              (other.delivered_reports == 0 ||
               mine.mean_delivery_ticks < other.mean_delivery_ticks)) {
            ++won;
          }
        }
        const std::string latency =
            row.measurable ? fmt::format("{:.3f}", row.mean_latency) : "unmeasurable";
        out << fmt::format("{:<8}{:<12}{:>14}{:>16.3f}{:>14}\n", row.load, to_string(row.mode),
                           latency, row.delivery_ratio,
                           fmt::format("{}/{}", won, grid.seeds.size()));
      }
      if (!plot_path.empty()) {
        std::ostringstream text;
        write_plot_data(text, table);
        write_atomically(plot_path, text.str());
      }
      return kExitOk;
    }

    if (*query_cmd) {
      Repository repo(config.repo);
      Query q;
      if (opt_qc->count()) {
        q = ByCriminal{Rfid{q_criminal}};
      } else if (opt_qz->count()) {
        q = ByZone{q_zone};
      } else if (opt_qn->count()) {
        q = CountCrimes{Rfid{q_count}};
      } else if (opt_qw->count()) {
        const auto bounds = parse_list(q_window);
        if (bounds.size() != 2) throw ParameterError("--window expects t0,t1");
        q = InWindow{static_cast<Tick>(bounds[0]), static_cast<Tick>(bounds[1])};
      } else {
        err << "usage: query --criminal ID | --zone Z | --count ID | --window t0,t1\n";
        return kExitUsage;
      }
      const QueryResult result = query(repo, q);
      if (const auto* n = std::get_if<std::size_t>(&result)) {
        out << *n << '\n';
      } else {
        print_records(out, std::get<std::vector<PatternRecord>>(result), tsv);
      }
      return kExitOk;
    }

    if (*bench_cmd) {
      using Clock = std::chrono::steady_clock;
      if (config.data) {
        const auto t0 = Clock::now();
        const Dataset dataset = load_trajectories(*config.data);
        const auto result = anonymize(dataset, config.anon, config.seed);
        const auto ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        out << fmt::format("obfuscate: {} trajectories, {} clusters, {:.1f} ms\n",
                           dataset.trajectories.size(), result.clusters.size(), ms);
      }
      if (!bench_topology.empty()) {
        const Topology topology = load_topology(bench_topology);
        ComparisonGrid grid;
        grid.base = config.sim;
        grid.loads = {0.1, 1.0};
        grid.seeds = parse_seed_range("0..4");
        const auto t0 = Clock::now();
        const auto table = run_comparison(topology, grid);
        const auto ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        out << fmt::format("simulate: {} cells, {:.1f} ms\n", table.cells.size(), ms);
      }
      if (!config.data && bench_topology.empty()) {
        err << "usage: bench needs --data and/or --topology\n";
        return kExitUsage;
      }
      return kExitOk;
    }

    return console.main_loop();
  } catch (const InfeasibleAnonymity& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace patrolnet
