#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>

namespace arena {

/// Milliseconds since the Unix epoch. Archives store plain integers.
using Millis = std::int64_t;

class Clock {
public:
  virtual ~Clock() = default;
  virtual Millis now_ms() = 0;
};

class SystemClock final : public Clock {
public:
  Millis now_ms() override {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
  }
};

/// Always returns the same instant. Used for replay and simulation runs so
/// archives are byte-reproducible.
class FrozenClock final : public Clock {
public:
  explicit FrozenClock(Millis at = 0) : at_(at) {}
  Millis now_ms() override { return at_; }

private:
  Millis at_;
};

/// Manually advanced clock for TTL tests.
class ManualClock final : public Clock {
public:
  explicit ManualClock(Millis start = 0) : now_(start) {}
  Millis now_ms() override { return now_.load(); }
  void advance(Millis delta) { now_ += delta; }

private:
  std::atomic<Millis> now_;
};

}  // namespace arena
