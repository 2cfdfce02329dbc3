#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "pcm/errors.hpp"
#include "pcm/pcm.hpp"

namespace httplib {
class Server;
}

namespace pcm::service {

class BadOrder : public Error {
 public:
  using Error::Error;
};

class UnknownSession : public Error {
 public:
  using Error::Error;
};

class BadValue : public Error {
 public:
  using Error::Error;
};

inline constexpr int kMinOrder = 2;
inline constexpr int kMaxOrder = 50;
inline constexpr double kDefaultTolerance = 1e-6;

using Clock = std::chrono::system_clock;

/// Judgments entered so far for one matrix. Only the upper triangle is
/// stored, keyed by 0-based (row < col).
struct Session {
  std::string id;
  int order = 0;
  std::map<Position, double> judgments;
  Clock::time_point created;
  Clock::time_point updated;

  IncompletePCM matrix() const;
};

enum class MethodChoice { Llsm, Ev, Both };

MethodChoice parse_method(std::string_view name);

/// Thread-safe session registry with an optional append-only journal.
///
/// Every create/judgment event is written as one JSON line before it is
/// applied, and the constructor replays an existing journal. Writes to one
/// session are serialised; reads of it may run concurrently.
///
/// Indices at this boundary are 1-based, as in the HTTP API.
class SessionStore {
 public:
  SessionStore() = default;
  explicit SessionStore(std::filesystem::path journal);

  Session create_session(int order);

  /// Sets (value) or removes (nullopt) the judgment for i < j. Returns the
  /// state payload including current connectivity.
  nlohmann::json submit_judgment(const std::string& id, int i, int j, std::optional<double> value);

  /// Completion payload, or a disconnection diagnostic listing components.
  nlohmann::json get_completion(const std::string& id, MethodChoice method, double tol = kDefaultTolerance) const;

  /// Next pair worth asking about (1-based, i < j), or nullopt when the
  /// matrix is complete.
  std::optional<Position> suggest_next_comparison(const std::string& id) const;

  Session get(const std::string& id) const;
  nlohmann::json state(const std::string& id) const;
  std::size_t size() const;

 private:
  struct Slot {
    mutable std::shared_mutex mutex;
    Session session;
  };

  std::shared_ptr<Slot> find(const std::string& id) const;
  void append(const nlohmann::json& record);
  void replay();
  Session create_with_id(std::string id, int order, Clock::time_point at);

  mutable std::shared_mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;

  std::optional<std::filesystem::path> journal_path_;
  std::mutex journal_mutex_;
  std::ofstream journal_;
};

/// Payload describing a session's judgments and connectivity.
nlohmann::json session_state_json(const Session& session);

/// Completion payload for a matrix; shared by the service and the CLI.
nlohmann::json completion_json(const IncompletePCM& pcm, MethodChoice method, double tol);

/// Heuristic elicitation order: bridge the two largest components while
/// disconnected; otherwise the missing pair where the methods disagree most
/// (order >= 5) or whose fill is farthest from 1 in log terms (order <= 4).
/// 0-based result.
std::optional<Position> suggest_pair(const IncompletePCM& pcm);

/// Installs the HTTP+JSON routes on `server`.
void register_routes(httplib::Server& server, SessionStore& store);

}  // namespace pcm::service
