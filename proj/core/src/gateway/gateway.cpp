#include "arena/gateway/gateway.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::gateway {

Gateway::Gateway(std::shared_ptr<Backend> backend, std::shared_ptr<Clock> clock, GatewayLimits limits)
    : backend_(std::move(backend)), clock_(std::move(clock)), limits_(limits) {
  if (!backend_) throw InputError("gateway needs a backend");
  if (!clock_) clock_ = std::make_shared<SystemClock>();
  if (limits_.max_concurrent < 1) throw InputError("max_concurrent must be at least 1");
}

void Gateway::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return in_flight_ < limits_.max_concurrent; });
  ++in_flight_;
  if (limits_.requests_per_minute <= 0) return;
  using namespace std::chrono;
  while (true) {
    const auto now = steady_clock::now();
    while (!recent_.empty() && now - recent_.front() >= minutes(1)) recent_.pop_front();
    if (static_cast<int>(recent_.size()) < limits_.requests_per_minute) {
      recent_.push_back(now);
      return;
    }
    cv_.wait_until(lock, recent_.front() + minutes(1));
  }
}

void Gateway::release() {
  {
    std::lock_guard lock(mu_);
    --in_flight_;
  }
  cv_.notify_all();
}

std::string Gateway::complete(const ChatRequest& req, RecordLog& log) {
  req.validate();
  const Millis at = clock_->now_ms();
  acquire();
  BackendReply reply;
  try {
    reply = backend_->send(req);
  } catch (...) {
    release();
    throw;
  }
  release();
  ChatRecord rec;
  rec.request = req;
  rec.hash = request_hash(req);
  rec.response_text = reply.text;
  rec.latency_ms = reply.latency_ms;
  rec.usage = reply.usage;
  rec.backend = backend_->kind();
  rec.timestamp_ms = at;
  log.push_back(std::move(rec));
  return reply.text;
}

void write_fixture(const std::string& path, const RecordLog& records) {
  std::string out;
  for (const auto& rec : records) {
    out += to_json(rec).dump();
    out += '\n';
  }
  text::write_file(path, out);
}

RecordLog load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open fixture " + path);
  RecordLog records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      records.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw DataFileError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace arena::gateway
