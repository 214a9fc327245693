#pragma once

#include <mutex>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace seeprivacy {

struct DiagnosticEvent {
  std::string level;  // "info" | "warn"
  std::string event;  // e.g. "port_fallback"
  std::string port;
  std::string detail;

  nlohmann::json to_json() const {
    return {{"level", level}, {"event", event}, {"port", port}, {"detail", detail}};
  }
};

// Collects structured events from any thread; optionally mirrors each one as a
// JSON line to a stream.
class Diagnostics {
 public:
  Diagnostics() = default;
  explicit Diagnostics(std::ostream* mirror) : mirror_(mirror) {}

  void record(DiagnosticEvent e) {
    std::lock_guard lock(mu_);
    if (mirror_) *mirror_ << e.to_json().dump() << '\n';
    events_.push_back(std::move(e));
  }

  void fallback(const std::string& port, const std::string& reason) {
    record({"warn", "port_fallback", port, reason});
  }

  std::vector<DiagnosticEvent> events() const {
    std::lock_guard lock(mu_);
    return events_;
  }

  std::size_t count(const std::string& event) const {
    std::lock_guard lock(mu_);
    std::size_t n = 0;
    for (const auto& e : events_) n += e.event == event;
    return n;
  }

 private:
  mutable std::mutex mu_;
  std::ostream* mirror_ = nullptr;
  std::vector<DiagnosticEvent> events_;
};

}  // namespace seeprivacy
