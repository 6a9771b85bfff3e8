#include <glob.h>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "arena/errors.hpp"
#include "arena/metrics/report.hpp"
#include "arena/platform/service.hpp"
#include "arena/platform/simulation.hpp"
#include "arena/text.hpp"

namespace fs = std::filesystem;
using namespace arena;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPartial = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> tokens(const std::string& list) {
  std::vector<std::string> out;
  for (const auto& t : text::split(list, ',')) {
    const auto s = text::trim(t);
    if (!s.empty()) out.push_back(s);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<assessment::Method> parse_methods(const std::string& list) {
  std::vector<assessment::Method> out;
  for (const auto& t : tokens(list)) {
    const auto m = assessment::parse_method(text::to_lower(t));
    if (!m) throw UsageError("unknown method '" + t + "' (expected da, qa)");
    out.push_back(*m);
  }
  return out;
}

std::vector<assessment::Condition> parse_conditions(const std::string& list) {
  std::vector<assessment::Condition> out;
  for (const auto& t : tokens(list)) {
    std::string up = t;
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    const auto c = assessment::parse_condition(up);
    if (!c) throw UsageError("unknown condition '" + t + "' (expected o, c, e, a, n, all)");
    out.push_back(*c);
  }
  return out;
}

std::vector<perception::ChannelBundle> parse_bundles(const std::string& list) {
  std::vector<perception::ChannelBundle> out;
  for (const auto& t : tokens(list)) {
    try {
      out.push_back(perception::ChannelBundle::parse(text::to_lower(t)));
    } catch (const Error&) {
      throw UsageError("unknown bundle '" + t + "' (expected tb, tbp, tbpe)");
    }
  }
  return out;
}

std::vector<std::string> expand_globs(const std::vector<std::string>& patterns) {
  std::set<std::string> out;
  for (const auto& p : patterns) {
    glob_t g{};
    if (::glob(p.c_str(), 0, nullptr, &g) == 0) {
      for (std::size_t i = 0; i < g.gl_pathc; ++i) {
        const std::string path = g.gl_pathv[i];
        if (fs::is_regular_file(path) && fs::path(path).extension() == ".jsonl") out.insert(path);
      }
    }
    globfree(&g);
  }
  return {out.begin(), out.end()};
}

struct CommonOptions {
  std::string config_path;
  std::string data_dir;
  std::string backend = "mock";
  std::string fixture;
};

platform::PlatformConfig load_config(const CommonOptions& o) {
  auto cfg = o.config_path.empty() ? platform::PlatformConfig{} : platform::PlatformConfig::load(o.config_path);
  if (!o.data_dir.empty()) cfg.data_dir = o.data_dir;
  return cfg;
}

std::shared_ptr<Clock> clock_for(const std::string& backend) {
  if (backend == "live") return std::make_shared<SystemClock>();
  return std::make_shared<FrozenClock>(0);
}

void check_backend(const std::string& backend) {
  if (backend != "live" && backend != "replay" && backend != "mock") {
    throw UsageError("unknown backend '" + backend + "' (expected live, replay, mock)");
  }
}

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--data-dir", o.data_dir, "Directory with prompts, personas and item bank");
  cmd->add_option("--backend", o.backend, "live | replay | mock");
  cmd->add_option("--fixture", o.fixture, "Recorded chat fixture (JSONL) for the replay backend");
}

int cmd_simulate(const CommonOptions& common, int players, std::uint64_t seed, const std::string& agent_model,
                 const std::string& assessor_model, const std::string& out_dir, const std::string& record_fixture,
                 bool assess) {
  check_backend(common.backend);
  if (players < 1) throw UsageError("--players must be at least 1");
  auto cfg = load_config(common);
  if (!agent_model.empty()) cfg.agent_model = agent_model;
  if (!assessor_model.empty()) cfg.assessor_model = assessor_model;
  const auto resources = platform::Resources::load(cfg);
  auto clock = clock_for(common.backend);
  auto gw = std::make_shared<gateway::Gateway>(platform::make_backend(common.backend, cfg, common.fixture), clock, cfg.limits);

  fs::create_directories(out_dir);
  gateway::RecordLog all;
  int failed = 0;
  std::optional<platform::AssessPlan> plan;
  if (assess) plan = platform::AssessPlan::full_matrix();
  for (int i = 0; i < players; ++i) {
    const auto id = platform::simulated_identity(resources->personas, seed, i);
    try {
      const auto archive = platform::simulate_player(resources, gw, clock, seed, i, plan);
      const auto path = (fs::path(out_dir) / (id.session_id + ".jsonl")).string();
      platform::write_archive(path, archive);
      all.insert(all.end(), archive.records.begin(), archive.records.end());
      std::cout << "simulated " << id.session_id << " -> " << path << " (" << archive.records.size()
                << " model calls, " << archive.assessments.size() << " assessments)\n";
    } catch (const Error& e) {
      ++failed;
      std::cerr << "simulation " << id.session_id << " failed [" << e.code() << "]: " << e.what() << "\n";
    }
  }
  platform::write_index(out_dir);
  if (!record_fixture.empty()) {
    gateway::write_fixture(record_fixture, all);
    std::cout << "recorded " << all.size() << " exchanges to " << record_fixture << "\n";
  }
  if (failed == players) return kExitFailure;
  return failed ? kExitPartial : kExitOk;
}

int cmd_assess(const CommonOptions& common, const std::vector<std::string>& archives, const std::string& methods,
               const std::string& conditions, const std::string& bundles, const std::string& assessor_model,
               std::optional<std::uint64_t> shuffle_seed) {
  check_backend(common.backend);
  const auto m = parse_methods(methods);
  const auto c = parse_conditions(conditions);
  const auto b = parse_bundles(bundles);
  const auto paths = expand_globs(archives);
  if (paths.empty()) throw UsageError("no archive matched --archive");
  auto cfg = load_config(common);
  if (!assessor_model.empty()) cfg.assessor_model = assessor_model;
  const auto resources = platform::Resources::load(cfg);
  const auto assessor = resources->make_assessor(shuffle_seed);

  std::size_t ok = 0, failed = 0;
  std::set<std::string> dirs;
  for (const auto& path : paths) {
    const auto archive = platform::load_archive(path);
    std::shared_ptr<gateway::Backend> backend;
    if (common.backend == "replay" && common.fixture.empty()) {
      backend = std::make_shared<gateway::ReplayBackend>(archive.records);
    } else {
      backend = platform::make_backend(common.backend, cfg, common.fixture);
    }
    gateway::Gateway gw(backend, clock_for(common.backend), cfg.limits);
    const auto cells = assessment::assess_matrix(assessor, gw, archive.evidence(), m, c, b, archive.assessment_keys());
    gateway::RecordLog records;
    std::vector<assessment::AssessmentResult> results;
    for (const auto& cell : cells) {
      records.insert(records.end(), cell.records.begin(), cell.records.end());
      const std::string label = std::string(assessment::method_name(cell.method)) + "/" +
                                std::string(assessment::condition_name(cell.condition)) + "/" + cell.bundle.token();
      if (cell.result) {
        ++ok;
        results.push_back(*cell.result);
        std::cout << path << " " << label << " ok\n";
      } else {
        ++failed;
        std::cerr << path << " " << label << " failed [" << cell.error_code << "]: " << cell.error_message << "\n";
      }
    }
    if (!records.empty() || !results.empty()) platform::append_assessments(path, records, results);
    if (cells.empty()) std::cout << path << " nothing to do (all requested cells already stored)\n";
    dirs.insert(fs::path(path).parent_path().string());
  }
  for (const auto& d : dirs) platform::write_index(d.empty() ? "." : d);
  if (failed == 0) return kExitOk;
  return ok == 0 ? kExitFailure : kExitPartial;
}

int cmd_report(const CommonOptions& common, const std::vector<std::string>& patterns, const std::string& truth_path,
               const std::string& out_dir, const std::string& threshold, const std::string& group_by) {
  const auto paths = expand_globs(patterns);
  if (paths.empty()) throw UsageError("no archive matched --archives");
  metrics::ReportOptions opts;
  const auto rule = metrics::parse_threshold_rule(threshold);
  if (!rule) throw UsageError("unknown threshold rule '" + threshold + "'");
  opts.threshold_rule = *rule;
  if (!group_by.empty()) opts.group_by = group_by;

  const auto cfg = load_config(common);
  const auto bank = assessment::ItemBank::load(DataPaths::resolve(cfg.data_dir).item_bank());
  const auto truths = metrics::load_ground_truth(truth_path, bank);
  std::vector<assessment::AssessmentResult> results;
  for (const auto& p : paths) {
    const auto a = platform::load_archive(p);
    results.insert(results.end(), a.assessments.begin(), a.assessments.end());
  }
  if (results.empty()) throw UsageError("the archives hold no assessment results");
  const auto report = metrics::build_report(results, truths, opts);
  fs::create_directories(out_dir);
  const auto out = fs::path(out_dir);
  text::write_file((out / "report.txt").string(), report.to_text());
  text::write_file((out / "report.csv").string(), report.to_csv());
  text::write_file((out / "report.json").string(), report.to_json().dump(2) + "\n");
  std::cout << report.to_text();
  return kExitOk;
}

int cmd_serve(const CommonOptions& common, const std::string& host, int port, const std::string& archive_dir,
              std::uint64_t seed) {
  check_backend(common.backend);
  const auto cfg = load_config(common);
  const auto resources = platform::Resources::load(cfg);
  auto clock = std::make_shared<SystemClock>();
  auto gw = std::make_shared<gateway::Gateway>(platform::make_backend(common.backend, cfg, common.fixture), clock, cfg.limits);
  platform::ApiService api(resources, gw, clock, seed);
  if (!archive_dir.empty()) api.set_archive_dir(archive_dir);
  std::cout << "listening on http://" << host << ":" << port << " (backend " << common.backend << ")\n" << std::flush;
  platform::serve_http(api, host, port);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Personality assessment game: play, simulate, assess and report."};
  app.require_subcommand(1);

  CommonOptions common;

  auto* serve = app.add_subcommand("serve", "Run the HTTP JSON API");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string archive_dir;
  std::uint64_t seed = 0;
  add_common(serve, common);
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--archive-dir", archive_dir, "Where closed sessions are archived");
  serve->add_option("--seed", seed, "Seed for session ids and agent order");

  auto* simulate = app.add_subcommand("simulate", "Play full sessions with simulated players");
  int players = 1;
  std::string agent_model, assessor_model, out_dir = "archives", record_fixture;
  bool assess_after = false;
  add_common(simulate, common);
  simulate->add_option("--players", players, "Number of simulated players");
  simulate->add_option("--seed", seed, "Seed for personas and agent order");
  simulate->add_option("--agent-model", agent_model);
  simulate->add_option("--assessor-model", assessor_model);
  simulate->add_option("--out", out_dir, "Archive directory");
  simulate->add_option("--record-fixture", record_fixture, "Write every exchange to this JSONL fixture");
  simulate->add_flag("--assess", assess_after, "Run the full assessment matrix after each session");

  auto* assess = app.add_subcommand("assess", "Assess archived sessions");
  std::vector<std::string> archives;
  std::string methods = "da,qa", conditions = "all", bundles = "tbpe";
  std::optional<std::uint64_t> shuffle_seed;
  add_common(assess, common);
  assess->add_option("--archive", archives, "Archive file(s) or glob(s)")->required();
  assess->add_option("--methods", methods, "Comma list of da, qa");
  assess->add_option("--conditions", conditions, "Comma list of o, c, e, a, n, all");
  assess->add_option("--bundles", bundles, "Comma list of tb, tbp, tbpe");
  assess->add_option("--assessor-model", assessor_model);
  assess->add_option("--shuffle-seed", shuffle_seed, "Present questionnaire items in a seeded random order");

  auto* report = app.add_subcommand("report", "Compare assessments with self-reported ground truth");
  std::vector<std::string> patterns;
  std::string truth, report_out = "report", threshold = "median_split_on_truth", group_by;
  report->add_option("--config", common.config_path);
  report->add_option("--data-dir", common.data_dir);
  report->add_option("--archives", patterns, "Archive glob(s)")->required();
  report->add_option("--truth", truth, "Ground-truth CSV")->required();
  report->add_option("--out", report_out, "Output directory");
  report->add_option("--threshold", threshold, "median_split_on_truth | fixed_midpoint_3");
  report->add_option("--group-by", group_by, "Ground-truth attribute column to split the grid by");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (serve->parsed()) return cmd_serve(common, host, port, archive_dir, seed);
    if (simulate->parsed()) {
      return cmd_simulate(common, players, seed, agent_model, assessor_model, out_dir, record_fixture, assess_after);
    }
    if (assess->parsed()) return cmd_assess(common, archives, methods, conditions, bundles, assessor_model, shuffle_seed);
    if (report->parsed()) return cmd_report(common, patterns, truth, report_out, threshold, group_by);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
