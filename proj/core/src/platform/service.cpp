#include "arena/platform/service.hpp"

#include <filesystem>

#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::platform {

using nlohmann::json;

int status_for_error(const std::string& code) {
  static const std::map<std::string, int> kStatus = {
      {"not_found", 404},
      {"input_error", 400},
      {"bundle_error", 400},
      {"range_error", 400},
      {"phase_error", 409},
      {"double_decision", 409},
      {"session_closed", 409},
      {"precondition_failed", 409},
      {"consent_required", 403},
      {"gateway_error", 502},
      {"transport_error", 502},
      {"auth_error", 502},
      {"rate_limit_error", 502},
      {"replay_miss", 502},
      {"temperature_contract", 502},
      {"moderation_error", 502},
      {"template_parse_error", 502},
      {"decision_parse_error", 502},
      {"label_parse_error", 502},
      {"answer_parse_error", 502},
      {"item_failure", 502},
  };
  const auto it = kStatus.find(code);
  return it == kStatus.end() ? 500 : it->second;
}

void SessionStore::put(std::shared_ptr<SessionRuntime> rt) {
  std::lock_guard lock(mu_);
  const auto id = rt->session_id();
  sessions_[id] = std::move(rt);
}

std::shared_ptr<SessionRuntime> SessionStore::get(const std::string& id) const {
  std::lock_guard lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("unknown session '" + id + "'");
  return it->second;
}

std::size_t SessionStore::expire_idle(Millis now) {
  std::vector<std::shared_ptr<SessionRuntime>> snapshot;
  {
    std::lock_guard lock(mu_);
    for (const auto& [_, rt] : sessions_) snapshot.push_back(rt);
  }
  std::size_t n = 0;
  for (const auto& rt : snapshot) {
    if (!rt->closed() && now - rt->last_activity_ms() > ttl_ms_) {
      rt->close_incomplete();
      ++n;
    }
  }
  return n;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

namespace {

json error_body(const std::string& code, const std::string& message) {
  return json{{"error", {{"code", code}, {"message", message}}}};
}

std::map<std::string, std::string> parse_query(const std::string& q) {
  std::map<std::string, std::string> out;
  for (const auto& part : text::split(q, '&')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    out[part.substr(0, eq)] = eq == std::string::npos ? "" : part.substr(eq + 1);
  }
  return out;
}

std::vector<std::string> string_list(const json& body, const char* key, std::vector<std::string> fallback) {
  if (!body.contains(key)) return fallback;
  if (!body[key].is_array()) throw InputError(std::string("'") + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : body[key]) {
    if (!v.is_string()) throw InputError(std::string("'") + key + "' must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  if (out.empty()) throw InputError(std::string("'") + key + "' must not be empty");
  return out;
}

json events_json(const std::vector<Event>& events, std::uint64_t after) {
  json arr = json::array();
  std::uint64_t last = after;
  for (const auto& e : events) {
    arr.push_back({{"seq", e.seq}, {"type", e.type}, {"data", e.data}});
    last = e.seq;
  }
  return json{{"events", arr}, {"next", last}};
}

json cells_json(const std::vector<assessment::MatrixCell>& cells) {
  json results = json::array();
  json errors = json::array();
  for (const auto& c : cells) {
    if (c.result) {
      results.push_back(assessment::to_json(*c.result));
    } else {
      errors.push_back({{"method", assessment::method_name(c.method)},
                        {"condition", assessment::condition_name(c.condition)},
                        {"bundle", c.bundle.token()},
                        {"code", c.error_code},
                        {"message", c.error_message}});
    }
  }
  return json{{"results", results}, {"errors", errors}};
}

}  // namespace

ApiService::ApiService(std::shared_ptr<const Resources> resources, std::shared_ptr<gateway::Gateway> gateway,
                       std::shared_ptr<Clock> clock, std::uint64_t seed)
    : resources_(std::move(resources)),
      gateway_(std::move(gateway)),
      clock_(std::move(clock)),
      store_(resources_->config.session_ttl_ms),
      rng_(seed) {}

ApiResponse ApiService::handle(const std::string& method, const std::string& target, const std::string& body) {
  try {
    store_.expire_idle(clock_->now_ms());
    const auto qpos = target.find('?');
    const std::string path = target.substr(0, qpos);
    const auto query = qpos == std::string::npos ? std::map<std::string, std::string>{} : parse_query(target.substr(qpos + 1));
    json parsed = json::object();
    if (!text::trim(body).empty()) {
      try {
        parsed = json::parse(body);
      } catch (const json::parse_error&) {
        return {400, error_body("invalid_json", "request body is not valid JSON")};
      }
      if (!parsed.is_object()) return {400, error_body("input_error", "request body must be a JSON object")};
    }
    return route(method, path, query, parsed);
  } catch (const Error& e) {
    return {status_for_error(e.code()), error_body(e.code(), e.what())};
  } catch (const json::exception& e) {
    return {400, error_body("input_error", e.what())};
  } catch (const std::exception& e) {
    return {500, error_body("internal_error", e.what())};
  }
}

ApiResponse ApiService::create_session(const json& body) {
  if (!body.contains("player_id") || !body["player_id"].is_string() || body["player_id"].get<std::string>().empty()) {
    throw InputError("'player_id' must be a non-empty string");
  }
  if (body.contains("consent") && !body["consent"].is_boolean()) throw InputError("'consent' must be a boolean");
  std::array<TraitId, 5> order = kAllTraits;
  std::string session_id;
  {
    std::lock_guard lock(id_mu_);
    if (body.contains("agent_order")) {
      const auto codes = string_list(body, "agent_order", {});
      if (codes.size() != 5) throw InputError("'agent_order' must list five trait codes");
      for (std::size_t i = 0; i < 5; ++i) {
        const auto t = codes[i].size() == 1 ? trait_from_code(codes[i][0]) : std::nullopt;
        if (!t) throw InputError("'" + codes[i] + "' is not a trait code");
        order[i] = *t;
      }
      if (!game::is_trait_permutation(order)) throw InputError("'agent_order' must name each trait once");
    } else {
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[static_cast<std::size_t>(rng_() % i)]);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "s%06llu-%08llx", static_cast<unsigned long long>(++counter_),
                  static_cast<unsigned long long>(rng_() & 0xffffffffull));
    session_id = buf;
  }
  const auto& cfg = resources_->config;
  game::SessionConfig sc;
  sc.rounds_per_encounter = cfg.rounds_per_encounter;
  sc.max_exchanges = cfg.max_exchanges;
  game::GameSession session(session_id, body["player_id"].get<std::string>(), order, body.value("consent", false), sc,
                            clock_->now_ms());
  auto rt = std::make_shared<SessionRuntime>(resources_, gateway_, clock_, std::move(session));
  store_.put(rt);
  return {201, json{{"session_id", session_id}, {"view", rt->view().to_json()}}};
}

void ApiService::maybe_archive(SessionRuntime& rt) {
  if (archive_dir_.empty() || !rt.closed()) return;
  std::filesystem::create_directories(archive_dir_);
  write_archive((std::filesystem::path(archive_dir_) / (rt.session_id() + ".jsonl")).string(), rt.archive());
  write_index(archive_dir_);
}

ApiResponse ApiService::route(const std::string& method, const std::string& path,
                              const std::map<std::string, std::string>& query, const json& body) {
  std::vector<std::string> seg;
  for (const auto& s : text::split(path, '/')) {
    if (!s.empty()) seg.push_back(s);
  }
  auto not_allowed = [&] { return ApiResponse{405, error_body("method_not_allowed", method + " is not supported on " + path)}; };

  if (seg.size() == 1 && seg[0] == "health") {
    if (method != "GET") return not_allowed();
    return {200, json{{"status", "ok"}}};
  }
  if (seg.empty() || seg[0] != "sessions") throw NotFound("no route for " + path);
  if (seg.size() == 1) {
    if (method != "POST") return not_allowed();
    return create_session(body);
  }
  const auto rt = store_.get(seg[1]);
  if (seg.size() != 3) throw NotFound("no route for " + path);
  const std::string& action = seg[2];

  if (action == "view") {
    if (method != "GET") return not_allowed();
    return {200, rt->view().to_json()};
  }
  if (action == "events") {
    if (method != "GET") return not_allowed();
    std::uint64_t since = 0;
    if (query.count("since")) {
      const std::string& s = query.at("since");
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 18) {
        throw InputError("'since' must be a non-negative integer");
      }
      since = std::stoull(s);
    }
    return {200, events_json(rt->events_since(since), since)};
  }
  if (action == "messages") {
    if (method != "POST") return not_allowed();
    if (!body.contains("text") || !body["text"].is_string() || text::trim(body["text"].get<std::string>()).empty()) {
      throw InputError("'text' must be a non-empty string");
    }
    rt->player_message(body["text"].get<std::string>());
    return {200, rt->view().to_json()};
  }
  if (action == "end_dialogue") {
    if (method != "POST") return not_allowed();
    rt->end_dialogue();
    return {200, rt->view().to_json()};
  }
  if (action == "decision") {
    if (method != "POST") return not_allowed();
    if (!body.contains("decision") || !body["decision"].is_string()) throw InputError("'decision' must be a string");
    const auto d = game::parse_decision(body["decision"].get<std::string>());
    if (!d) throw InputError("'decision' must be cooperate or defect");
    rt->player_decision(*d);
    maybe_archive(*rt);
    return {200, rt->view().to_json()};
  }
  if (action == "consent") {
    if (method != "POST") return not_allowed();
    if (!body.contains("consent") || !body["consent"].is_boolean()) throw InputError("'consent' must be a boolean");
    rt->set_consent(body["consent"].get<bool>());
    return {200, rt->view().to_json()};
  }
  if (action == "assessment") {
    if (method == "GET") {
      if (!rt->closed()) throw PreconditionError("the session is still in play");
      rt->session().require_consent();
      json results = json::array();
      for (const auto& r : rt->archive().assessments) results.push_back(assessment::to_json(r));
      return {200, json{{"results", results}}};
    }
    if (method != "POST") return not_allowed();
    std::vector<assessment::Method> methods;
    for (const auto& s : string_list(body, "methods", {"DA", "QA"})) {
      const auto m = assessment::parse_method(s);
      if (!m) throw InputError("unknown method '" + s + "'");
      methods.push_back(*m);
    }
    std::vector<assessment::Condition> conditions;
    for (const auto& s : string_list(body, "conditions", {"ALL"})) {
      const auto c = assessment::parse_condition(s);
      if (!c) throw InputError("unknown condition '" + s + "'");
      conditions.push_back(*c);
    }
    std::vector<perception::ChannelBundle> bundles;
    for (const auto& s : string_list(body, "bundles", {"tbpe"})) bundles.push_back(perception::ChannelBundle::parse(s));
    const auto cells = rt->assess(methods, conditions, bundles);
    maybe_archive(*rt);
    return {200, cells_json(cells)};
  }
  throw NotFound("no route for " + path);
}

}  // namespace arena::platform
