#include "arena/platform/archive.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::platform {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string line(const char* type, json data) {
  return json{{"type", type}, {"data", std::move(data)}}.dump() + "\n";
}

std::string assessment_lines(const gateway::RecordLog& records, const std::vector<assessment::AssessmentResult>& results) {
  std::string out;
  for (const auto& r : records) out += line("chat_record", gateway::to_json(r));
  for (const auto& r : results) out += line("assessment", assessment::to_json(r));
  return out;
}

}  // namespace

std::vector<std::string> SessionArchive::assessment_keys() const {
  std::vector<std::string> keys;
  for (const auto& a : assessments) keys.push_back(a.cell_key());
  return keys;
}

assessment::SessionEvidence SessionArchive::evidence() const {
  if (!session) throw DataFileError("archive has no session snapshot");
  return assessment::SessionEvidence{&*session, &agents, &perception};
}

std::string serialize_archive(const SessionArchive& a) {
  json header = a.header;
  header["type"] = "header";
  header["format"] = "arena-archive";
  header["format_version"] = kArchiveFormatVersion;
  std::string out = header.dump() + "\n";
  if (a.session) out += line("session", a.session->to_json());
  for (std::size_t i = 0; i < a.agents.size(); ++i) {
    json st = cognition::to_json(a.agents[i]);
    out += json{{"type", "agent_state"}, {"position", i}, {"data", st}}.dump() + "\n";
  }
  for (const auto& p : a.perception) out += line("perception", perception::to_json(p));
  out += assessment_lines(a.records, a.assessments);
  return out;
}

SessionArchive parse_archive(const std::string& contents) {
  SessionArchive a;
  bool have_header = false;
  std::size_t line_no = 0;
  std::map<std::size_t, cognition::AgentState> agents;
  for (const auto& raw : text::split_lines(contents)) {
    ++line_no;
    if (text::trim(raw).empty()) continue;
    const std::string where = "archive line " + std::to_string(line_no);
    json j;
    try {
      j = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw DataFileError(where + " is not valid JSON");
    }
    try {
      const std::string type = j.at("type").get<std::string>();
      if (!have_header) {
        if (type != "header" || j.value("format", "") != "arena-archive") {
          throw DataFileError(where + ": archive must start with a header line");
        }
        if (j.value("format_version", 0) != kArchiveFormatVersion) {
          throw DataFileError("unsupported archive format version " + j["format_version"].dump());
        }
        a.header = j;
        have_header = true;
      } else if (type == "session") {
        a.session = game::GameSession::from_json(j.at("data"));
      } else if (type == "agent_state") {
        agents[j.at("position").get<std::size_t>()] = cognition::agent_state_from_json(j.at("data"));
      } else if (type == "perception") {
        a.perception.push_back(perception::perception_record_from_json(j.at("data")));
      } else if (type == "chat_record") {
        a.records.push_back(gateway::record_from_json(j.at("data")));
      } else if (type == "assessment") {
        auto r = assessment::assessment_result_from_json(j.at("data"));
        const auto key = r.cell_key();
        auto it = std::find_if(a.assessments.begin(), a.assessments.end(),
                               [&](const auto& x) { return x.cell_key() == key; });
        if (it != a.assessments.end()) {
          *it = std::move(r);
        } else {
          a.assessments.push_back(std::move(r));
        }
      } else {
        throw DataFileError(where + ": unknown line type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw DataFileError(where + " is malformed: " + e.what());
    } catch (const InputError& e) {
      throw DataFileError(where + " is malformed: " + e.what());
    }
  }
  if (!have_header) throw DataFileError("archive is empty");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (!agents.count(i)) throw DataFileError("archive agent states are not contiguous");
    a.agents.push_back(std::move(agents[i]));
  }
  if (a.session && !a.agents.empty() && a.agents.size() != a.session->encounters().size()) {
    throw DataFileError("archive has " + std::to_string(a.agents.size()) + " agent states for " +
                        std::to_string(a.session->encounters().size()) + " encounters");
  }
  return a;
}

void write_archive(const std::string& path, const SessionArchive& a) { text::write_file(path, serialize_archive(a)); }

SessionArchive load_archive(const std::string& path) { return parse_archive(text::read_file(path)); }

void append_assessments(const std::string& path, const gateway::RecordLog& records,
                        const std::vector<assessment::AssessmentResult>& results) {
  if (!fs::exists(path)) throw IoError("archive " + path + " does not exist");
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw IoError("cannot append to " + path);
  out << assessment_lines(records, results);
  if (!out) throw IoError("write to " + path + " failed");
}

void write_index(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  json entries = json::array();
  for (const auto& f : files) {
    try {
      const auto a = load_archive(f.string());
      entries.push_back({{"file", f.filename().string()},
                         {"session_id", a.header.value("session_id", "")},
                         {"player_id", a.header.value("player_id", "")},
                         {"status", a.session ? std::string(game::status_name(a.session->status())) : "unknown"},
                         {"simulated", a.header.value("simulated", false)},
                         {"chat_records", a.records.size()},
                         {"assessments", a.assessments.size()}});
    } catch (const Error& e) {
      entries.push_back({{"file", f.filename().string()}, {"error", e.what()}});
    }
  }
  text::write_file((fs::path(dir) / "index.json").string(),
                   json{{"format", "arena-archive-index"}, {"format_version", kArchiveFormatVersion}, {"archives", entries}}
                           .dump(2) +
                       "\n");
}

}  // namespace arena::platform
