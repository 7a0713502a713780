#pragma once

// Newline-delimited JSON protocol of the explore service. Every message is
// one JSON object on one line and carries "v": 1.
//
// client -> server
//   {"v":1,"type":"start","spots":P}                     or with
//       "position":STR,"nimPart":N, optional "mode":"outcome"|"nimber", "paused":BOOL
//   {"v":1,"type":"redirectChild"|"redirectLand","level":L,"ordinal":K, optional "position":STR}
//   {"v":1,"type":"pause"|"resume"|"step"|"snapshot"}
//   each command may name a "session"; the last started one is the default.
//
// server -> client
//   {"v":1,"type":"ack","command":C,"status":"ok"|"noop"|"stale"|"error","message":M, "session":ID?}
//   {"v":1,"type":"snapshot","session":ID,"version":N,"status":S,"nodes":N,"records":N,
//    "levels":[{"level","position","nimberPart","phase","trying","tried","total","untried","lands"}],
//    "result":{"outcome","nimber","error"}?}

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sprouts/explore.hpp"

namespace sprouts {

inline constexpr int kWireVersion = 1;

struct WireCommand {
  enum class Type : std::uint8_t { Start, RedirectChild, RedirectLand, Pause, Resume, Step, Snapshot };
  Type type = Type::Snapshot;
  std::optional<std::uint64_t> session;
  // redirects
  int level = 0;
  int ordinal = 0;
  std::optional<std::string> position;
  // start
  std::optional<int> spots;
  int nim_part = 0;
  bool nimber = false;
  bool paused = false;
};

const char* to_string(WireCommand::Type t);

/// Throws SessionError on malformed JSON, a wrong version or missing fields.
WireCommand parse_command(std::string_view line);
std::string command_message(const WireCommand& c);

std::string snapshot_message(std::uint64_t session, const SessionSnapshot& s);
std::string ack_message(const Ack& a, std::optional<std::uint64_t> session = std::nullopt);

/// Per-connection protocol state.
struct Connection {
  std::optional<std::uint64_t> attached;
  std::uint64_t sent_version = 0;
  bool sent_any = false;
};

/// Handles one request line and returns the reply lines.
std::vector<std::string> handle_line(SessionManager& sessions, Connection& conn, std::string_view line,
                                     const EngineOptions& engine = {});

/// TCP server on 127.0.0.1, one thread per client. Snapshots of the attached
/// session are pushed whenever their version changes.
class ExploreServer {
 public:
  /// Port 0 picks a free port.
  ExploreServer(SessionManager& sessions, std::uint16_t port, EngineOptions engine = {});
  ~ExploreServer();
  ExploreServer(const ExploreServer&) = delete;
  ExploreServer& operator=(const ExploreServer&) = delete;

  /// Throws SessionError when the socket cannot be bound.
  void start();
  void stop();
  std::uint16_t port() const { return port_; }

 private:
  struct Impl;
  SessionManager& sessions_;
  std::uint16_t port_;
  EngineOptions engine_;
  Impl* impl_ = nullptr;
};

/// Blocking line client, used by tests and scripts.
class LineClient {
 public:
  /// Throws SessionError when the connection fails.
  explicit LineClient(std::uint16_t port);
  ~LineClient();
  LineClient(const LineClient&) = delete;
  LineClient& operator=(const LineClient&) = delete;

  void send(const std::string& line);
  /// Next line, or nullopt on timeout or closed connection.
  std::optional<std::string> read_line(std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
  std::string buffer_;
};

}  // namespace sprouts
