#pragma once

// Live solving sessions that a person can steer while they run.
//
// A session owns one worker thread running the engine. The worker stops at
// every node boundary to drain the command queue, so redirects never cut an
// expansion in half and stored records stay consistent. Snapshots are copied
// into a versioned cell at those boundaries and can be read at any time.

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sprouts/engine.hpp"
#include "sprouts/store.hpp"

namespace sprouts {

enum class SessionStatus : std::uint8_t { Running, Paused, Done };

const char* to_string(SessionStatus s);

struct SessionConfig {
  Couple root;
  /// Compute the nimber of the root position instead of the couple outcome.
  bool nimber = false;
  /// Park before the first node.
  bool start_paused = false;
  EngineOptions engine;
  /// Shared store; the session keeps its own when null.
  std::shared_ptr<Store> store;
};

struct SessionResult {
  std::optional<Outcome> outcome;
  std::optional<int> nimber;
  /// Set when the search failed (budget, cancellation, defect).
  std::string error;
};

struct SessionSnapshot {
  std::uint64_t version = 0;
  SessionStatus status = SessionStatus::Running;
  std::uint64_t nodes = 0;
  std::size_t records = 0;
  std::vector<LevelView> levels;
  /// Present once status is Done.
  std::optional<SessionResult> result;
};

enum class AckStatus : std::uint8_t { Ok, NoOp, Stale, Error };

const char* to_string(AckStatus s);

struct Ack {
  std::string command;
  AckStatus status = AckStatus::Ok;
  std::string message;
};

/// A redirect that took effect, with the node count at which it did.
struct LoggedCommand {
  std::uint64_t node = 0;
  std::int64_t millis = 0;  // since session start
  Redirect redirect;
};

class Session {
 public:
  Session(std::uint64_t id, SessionConfig config);
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  std::uint64_t id() const { return id_; }
  const SessionConfig& config() const { return config_; }
  SessionSnapshot snapshot() const;

  /// The three calls below return once the worker is parked (or done), so a
  /// snapshot taken afterwards reflects them.
  Ack pause();
  Ack resume();
  /// Runs exactly one node; only valid while paused.
  Ack step();

  /// Queued and checked by the worker at its next node boundary.
  std::future<Ack> redirect(const Redirect& r);
  /// Waits for the ack and, on a paused session, for the worker to park again.
  Ack redirect_wait(const Redirect& r);

  /// Stops the search at the next node boundary.
  void cancel();
  /// True once done.
  bool wait_for(std::chrono::milliseconds timeout) const;
  SessionResult wait() const;

  std::vector<LoggedCommand> command_log() const;
  Store& store() { return *store_; }

 private:
  class Hook;
  struct Pending {
    Redirect redirect;
    std::promise<Ack> ack;
  };

  void run();
  std::optional<Redirect> on_node(const SearchView& view);
  void publish_locked(const SearchView* view, SessionStatus status);

  const std::uint64_t id_;
  const SessionConfig config_;
  std::shared_ptr<Store> store_;
  const std::chrono::steady_clock::time_point started_;

  mutable std::mutex mutex_;
  mutable std::condition_variable cv_;
  bool paused_ = false;
  bool parked_ = false;
  bool done_ = false;
  bool cancel_ = false;
  int step_credits_ = 0;
  std::deque<Pending> queue_;
  std::vector<LoggedCommand> log_;
  SessionSnapshot cell_;
  std::uint64_t last_publish_nodes_ = 0;
  std::chrono::steady_clock::time_point last_publish_;

  std::unique_ptr<Hook> hook_;
  std::thread worker_;
};

/// Replays a command log on a fresh engine and store: each redirect is applied
/// at the node count where it was recorded.
SessionResult replay(const SessionConfig& config, const std::vector<LoggedCommand>& log,
                     std::uint64_t* nodes = nullptr);

class SessionManager {
 public:
  explicit SessionManager(std::size_t max_running = 4) : max_running_(max_running) {}

  /// Throws SessionError past the limit of running sessions.
  std::uint64_t start(SessionConfig config);
  /// Throws SessionError for an unknown id.
  std::shared_ptr<Session> get(std::uint64_t id) const;
  std::vector<std::uint64_t> ids() const;
  /// Most recently started session, if any.
  std::optional<std::uint64_t> latest() const;
  void remove(std::uint64_t id);

 private:
  std::size_t max_running_;
  mutable std::mutex mutex_;
  std::uint64_t next_id_ = 1;
  std::map<std::uint64_t, std::shared_ptr<Session>> sessions_;
};

}  // namespace sprouts
