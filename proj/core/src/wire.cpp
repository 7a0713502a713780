#include "sprouts/wire.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <list>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "sprouts/error.hpp"
#include "sprouts/position.hpp"

namespace sprouts {

using json = nlohmann::json;

namespace {

struct TypeName {
  WireCommand::Type type;
  const char* name;
};

constexpr TypeName kTypes[] = {
    {WireCommand::Type::Start, "start"},   {WireCommand::Type::RedirectChild, "redirectChild"},
    {WireCommand::Type::RedirectLand, "redirectLand"}, {WireCommand::Type::Pause, "pause"},
    {WireCommand::Type::Resume, "resume"}, {WireCommand::Type::Step, "step"},
    {WireCommand::Type::Snapshot, "snapshot"},
};

template <typename T>
T field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw SessionError(std::string("missing field '") + name + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw SessionError(std::string("field '") + name + "' has the wrong type");
  }
}

}  // namespace

const char* to_string(WireCommand::Type t) {
  for (const TypeName& tn : kTypes) {
    if (tn.type == t) return tn.name;
  }
  return "?";
}

WireCommand parse_command(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception&) {
    throw SessionError("message is not valid JSON");
  }
  if (!j.is_object()) throw SessionError("message is not a JSON object");
  if (field<int>(j, "v") != kWireVersion) throw SessionError("unsupported protocol version");
  const auto type = field<std::string>(j, "type");
  WireCommand c;
  bool known = false;
  for (const TypeName& tn : kTypes) {
    if (type == tn.name) {
      c.type = tn.type;
      known = true;
    }
  }
  if (!known) throw SessionError("unknown message type '" + type + "'");
  if (j.contains("session")) c.session = field<std::uint64_t>(j, "session");
  switch (c.type) {
    case WireCommand::Type::RedirectChild:
    case WireCommand::Type::RedirectLand:
      c.level = field<int>(j, "level");
      c.ordinal = field<int>(j, "ordinal");
      if (c.level < 0 || c.ordinal < 0) throw SessionError("level and ordinal must be non-negative");
      if (j.contains("position")) c.position = field<std::string>(j, "position");
      break;
    case WireCommand::Type::Start:
      if (j.contains("spots")) {
        c.spots = field<int>(j, "spots");
        if (*c.spots < 0) throw SessionError("spots must be non-negative");
      } else {
        c.position = field<std::string>(j, "position");
      }
      if (j.contains("nimPart")) c.nim_part = field<int>(j, "nimPart");
      if (c.nim_part < 0) throw SessionError("nimPart must be non-negative");
      if (j.contains("mode")) {
        const auto mode = field<std::string>(j, "mode");
        if (mode != "outcome" && mode != "nimber") throw SessionError("mode must be 'outcome' or 'nimber'");
        c.nimber = mode == "nimber";
      }
      if (j.contains("paused")) c.paused = field<bool>(j, "paused");
      break;
    default:
      break;
  }
  return c;
}

std::string command_message(const WireCommand& c) {
  json j{{"v", kWireVersion}, {"type", to_string(c.type)}};
  if (c.session) j["session"] = *c.session;
  if (c.type == WireCommand::Type::RedirectChild || c.type == WireCommand::Type::RedirectLand) {
    j["level"] = c.level;
    j["ordinal"] = c.ordinal;
    if (c.position) j["position"] = *c.position;
  } else if (c.type == WireCommand::Type::Start) {
    if (c.spots) j["spots"] = *c.spots;
    else j["position"] = c.position.value_or("");
    j["nimPart"] = c.nim_part;
    j["mode"] = c.nimber ? "nimber" : "outcome";
    j["paused"] = c.paused;
  }
  return j.dump();
}

std::string snapshot_message(std::uint64_t session, const SessionSnapshot& s) {
  json levels = json::array();
  for (const LevelView& l : s.levels) {
    levels.push_back({{"level", l.level},
                      {"position", l.position},
                      {"nimberPart", l.nim_part},
                      {"phase", to_string(l.phase)},
                      {"trying", l.trying},
                      {"tried", l.tried},
                      {"total", l.total},
                      {"untried", l.untried},
                      {"lands", l.lands}});
  }
  json j{{"v", kWireVersion}, {"type", "snapshot"},  {"session", session}, {"version", s.version},
         {"status", to_string(s.status)}, {"nodes", s.nodes}, {"records", s.records}, {"levels", levels}};
  if (s.result) {
    json r = json::object();
    if (s.result->outcome) r["outcome"] = to_string(*s.result->outcome);
    if (s.result->nimber) r["nimber"] = *s.result->nimber;
    if (!s.result->error.empty()) r["error"] = s.result->error;
    j["result"] = r;
  }
  return j.dump();
}

std::string ack_message(const Ack& a, std::optional<std::uint64_t> session) {
  json j{{"v", kWireVersion}, {"type", "ack"}, {"command", a.command}, {"status", to_string(a.status)},
         {"message", a.message}};
  if (session) j["session"] = *session;
  return j.dump();
}

std::vector<std::string> handle_line(SessionManager& sessions, Connection& conn, std::string_view line,
                                     const EngineOptions& engine) {
  WireCommand c;
  try {
    c = parse_command(line);
  } catch (const SessionError& e) {
    return {ack_message(Ack{"invalid", AckStatus::Error, e.what()})};
  }
  const std::string name = to_string(c.type);
  try {
    if (c.type == WireCommand::Type::Start) {
      SessionConfig config;
      const Position p = c.spots ? start_position(*c.spots) : parse(*c.position);
      config.root = make_couple(p, c.nim_part);
      config.nimber = c.nimber;
      config.start_paused = c.paused;
      config.engine = engine;
      const std::uint64_t id = sessions.start(std::move(config));
      conn.attached = id;
      conn.sent_any = false;
      return {ack_message(Ack{name, AckStatus::Ok, {}}, id)};
    }
    const std::optional<std::uint64_t> id = c.session ? c.session : (conn.attached ? conn.attached : sessions.latest());
    if (!id) return {ack_message(Ack{name, AckStatus::Error, "no session"})};
    const std::shared_ptr<Session> s = sessions.get(*id);
    if (conn.attached != id) {
      conn.attached = id;
      conn.sent_any = false;
    }
    Ack ack;
    switch (c.type) {
      case WireCommand::Type::Pause: ack = s->pause(); break;
      case WireCommand::Type::Resume: ack = s->resume(); break;
      case WireCommand::Type::Step: ack = s->step(); break;
      case WireCommand::Type::Snapshot: {
        const SessionSnapshot snap = s->snapshot();
        conn.sent_version = snap.version;
        conn.sent_any = true;
        return {snapshot_message(*id, snap)};
      }
      default: {
        Redirect r;
        r.kind = c.type == WireCommand::Type::RedirectChild ? Redirect::Kind::Child : Redirect::Kind::Land;
        r.level = c.level;
        r.ordinal = c.ordinal;
        r.expect_position = c.position;
        ack = s->redirect_wait(r);
        break;
      }
    }
    return {ack_message(ack, id)};
  } catch (const Error& e) {
    return {ack_message(Ack{name, AckStatus::Error, e.what()})};
  }
}

// ---------------------------------------------------------------------------

namespace {

bool send_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

constexpr int kPollMillis = 50;
constexpr std::size_t kMaxLine = 1 << 20;

}  // namespace

struct ExploreServer::Impl {
  int listen_fd = -1;
  std::atomic<bool> stopping{false};
  std::thread acceptor;
  std::mutex mutex;
  std::list<std::thread> clients;

  void serve(int fd, SessionManager& sessions, const EngineOptions& engine) {
    Connection conn;
    std::string buffer;
    char chunk[4096];
    while (!stopping) {
      pollfd p{fd, POLLIN, 0};
      const int ready = ::poll(&p, 1, kPollMillis);
      if (ready < 0 && errno != EINTR) break;
      if (ready > 0) {
        const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));
        if (buffer.size() > kMaxLine) break;
        std::size_t nl;
        bool ok = true;
        while (ok && (nl = buffer.find('\n')) != std::string::npos) {
          const std::string line = buffer.substr(0, nl);
          buffer.erase(0, nl + 1);
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          for (const std::string& reply : handle_line(sessions, conn, line, engine)) ok &= send_all(fd, reply + "\n");
        }
        if (!ok) break;
      }
      if (conn.attached) {
        try {
          const SessionSnapshot snap = sessions.get(*conn.attached)->snapshot();
          if (!conn.sent_any || snap.version != conn.sent_version) {
            conn.sent_version = snap.version;
            conn.sent_any = true;
            if (!send_all(fd, snapshot_message(*conn.attached, snap) + "\n")) break;
          }
        } catch (const SessionError&) {
          conn.attached.reset();
        }
      }
    }
    ::close(fd);
  }
};

ExploreServer::ExploreServer(SessionManager& sessions, std::uint16_t port, EngineOptions engine)
    : sessions_(sessions), port_(port), engine_(engine) {}

ExploreServer::~ExploreServer() { stop(); }

void ExploreServer::start() {
  if (impl_) return;
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw SessionError(std::string("socket: ") + std::strerror(errno));
  const int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port_);
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(fd, 16) < 0) {
    const std::string why = std::strerror(errno);
    ::close(fd);
    throw SessionError("cannot listen on port " + std::to_string(port_) + ": " + why);
  }
  socklen_t len = sizeof addr;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);

  impl_ = new Impl;
  impl_->listen_fd = fd;
  impl_->acceptor = std::thread([this] {
    while (!impl_->stopping) {
      pollfd p{impl_->listen_fd, POLLIN, 0};
      if (::poll(&p, 1, kPollMillis) <= 0) continue;
      const int client = ::accept(impl_->listen_fd, nullptr, nullptr);
      if (client < 0) continue;
      std::lock_guard lk(impl_->mutex);
      impl_->clients.emplace_back([this, client] { impl_->serve(client, sessions_, engine_); });
    }
  });
}

void ExploreServer::stop() {
  if (!impl_) return;
  impl_->stopping = true;
  if (impl_->acceptor.joinable()) impl_->acceptor.join();
  {
    std::lock_guard lk(impl_->mutex);
    for (std::thread& t : impl_->clients) t.join();
  }
  ::close(impl_->listen_fd);
  delete impl_;
  impl_ = nullptr;
}

// ---------------------------------------------------------------------------

LineClient::LineClient(std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw SessionError(std::string("socket: ") + std::strerror(errno));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
    const std::string why = std::strerror(errno);
    ::close(fd_);
    fd_ = -1;
    throw SessionError("cannot connect to port " + std::to_string(port) + ": " + why);
  }
}

LineClient::~LineClient() {
  if (fd_ >= 0) ::close(fd_);
}

void LineClient::send(const std::string& line) {
  if (!send_all(fd_, line + "\n")) throw SessionError("connection closed");
}

std::optional<std::string> LineClient::read_line(std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  char chunk[4096];
  for (;;) {
    if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) return std::nullopt;
    pollfd p{fd_, POLLIN, 0};
    const int ready = ::poll(&p, 1, static_cast<int>(left.count()));
    if (ready <= 0) continue;
    const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
    if (n <= 0) return std::nullopt;
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

}  // namespace sprouts
