#include "sprouts/explore.hpp"

#include "sprouts/error.hpp"
#include "sprouts/position.hpp"

namespace sprouts {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kPublishEveryNodes = 256;
constexpr auto kPublishEvery = std::chrono::milliseconds(50);

const char* command_name(const Redirect& r) {
  return r.kind == Redirect::Kind::Child ? "redirectChild" : "redirectLand";
}

AckStatus ack_status(RedirectStatus s) {
  switch (s) {
    case RedirectStatus::Ok: return AckStatus::Ok;
    case RedirectStatus::NoOp: return AckStatus::NoOp;
    case RedirectStatus::Stale: return AckStatus::Stale;
    case RedirectStatus::Invalid: break;
  }
  return AckStatus::Error;
}

}  // namespace

const char* to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::Running: return "running";
    case SessionStatus::Paused: return "paused";
    case SessionStatus::Done: break;
  }
  return "done";
}

const char* to_string(AckStatus s) {
  switch (s) {
    case AckStatus::Ok: return "ok";
    case AckStatus::NoOp: return "noop";
    case AckStatus::Stale: return "stale";
    case AckStatus::Error: break;
  }
  return "error";
}

class Session::Hook : public Steering {
 public:
  explicit Hook(Session& s) : s_(s) {}
  std::optional<Redirect> on_node(const SearchView& view) override { return s_.on_node(view); }

 private:
  Session& s_;
};

Session::Session(std::uint64_t id, SessionConfig config)
    : id_(id),
      config_(std::move(config)),
      store_(config_.store ? config_.store : std::make_shared<Store>()),
      started_(Clock::now()),
      paused_(config_.start_paused),
      last_publish_(started_),
      hook_(std::make_unique<Hook>(*this)) {
  cell_.status = paused_ ? SessionStatus::Paused : SessionStatus::Running;
  worker_ = std::thread(&Session::run, this);
}

Session::~Session() {
  cancel();
  if (worker_.joinable()) worker_.join();
}

void Session::run() {
  Engine engine(*store_, config_.engine, hook_.get());
  SessionResult result;
  try {
    if (config_.nimber) {
      const int n = engine.nimber_of(parse(config_.root.position));
      result.nimber = n;
      result.outcome = n == config_.root.nim_part ? Outcome::Loss : Outcome::Win;
    } else {
      result.outcome = engine.compute_win_loss(config_.root);
    }
  } catch (const Error& e) {
    result.error = e.what();
  }
  std::lock_guard lk(mutex_);
  done_ = true;
  parked_ = false;
  for (Pending& p : queue_) p.ack.set_value(Ack{command_name(p.redirect), AckStatus::Stale, "session finished"});
  queue_.clear();
  cell_.levels.clear();
  cell_.nodes = engine.nodes();
  cell_.records = store_->size();
  cell_.status = SessionStatus::Done;
  cell_.result = std::move(result);
  ++cell_.version;
  cv_.notify_all();
}

void Session::publish_locked(const SearchView* view, SessionStatus status) {
  if (view) {
    cell_.levels = view->levels();
    cell_.nodes = view->nodes();
    last_publish_nodes_ = cell_.nodes;
    last_publish_ = Clock::now();
  }
  cell_.records = store_->size();
  cell_.status = status;
  ++cell_.version;
}

std::optional<Redirect> Session::on_node(const SearchView& view) {
  std::unique_lock lk(mutex_);
  for (;;) {
    if (cancel_) throw SearchAborted("session cancelled");
    while (!queue_.empty()) {
      Pending p = std::move(queue_.front());
      queue_.pop_front();
      const RedirectCheck check = view.check(p.redirect);
      p.ack.set_value(Ack{command_name(p.redirect), ack_status(check.status), check.message});
      if (check.status == RedirectStatus::Ok) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started_).count();
        log_.push_back(LoggedCommand{view.nodes(), ms, p.redirect});
        parked_ = false;
        return p.redirect;
      }
    }
    if (!paused_) break;
    if (step_credits_ > 0) {
      --step_credits_;
      break;
    }
    if (!parked_) {
      parked_ = true;
      publish_locked(&view, SessionStatus::Paused);
      cv_.notify_all();
    }
    cv_.wait(lk);
  }
  parked_ = false;
  if (view.nodes() == 0 || view.nodes() - last_publish_nodes_ >= kPublishEveryNodes ||
      Clock::now() - last_publish_ >= kPublishEvery) {
    publish_locked(&view, paused_ ? SessionStatus::Paused : SessionStatus::Running);
  }
  return std::nullopt;
}

SessionSnapshot Session::snapshot() const {
  std::lock_guard lk(mutex_);
  return cell_;
}

Ack Session::pause() {
  std::unique_lock lk(mutex_);
  if (done_) return Ack{"pause", AckStatus::Error, "session is done"};
  if (paused_) return Ack{"pause", AckStatus::NoOp, "already paused"};
  paused_ = true;
  cv_.wait(lk, [&] { return parked_ || done_; });
  return Ack{"pause", AckStatus::Ok, {}};
}

Ack Session::resume() {
  std::lock_guard lk(mutex_);
  if (done_) return Ack{"resume", AckStatus::Error, "session is done"};
  if (!paused_) return Ack{"resume", AckStatus::NoOp, "not paused"};
  paused_ = false;
  step_credits_ = 0;
  publish_locked(nullptr, SessionStatus::Running);
  cv_.notify_all();
  return Ack{"resume", AckStatus::Ok, {}};
}

Ack Session::step() {
  std::unique_lock lk(mutex_);
  if (done_) return Ack{"step", AckStatus::Error, "session is done"};
  if (!paused_) return Ack{"step", AckStatus::Error, "step needs a paused session"};
  // wait for the worker to park so the step starts from a visible state
  cv_.wait(lk, [&] { return parked_ || done_; });
  if (done_) return Ack{"step", AckStatus::Ok, "session finished"};
  const std::uint64_t version = cell_.version;
  ++step_credits_;
  cv_.notify_all();
  cv_.wait(lk, [&] { return done_ || (parked_ && cell_.version != version); });
  return Ack{"step", AckStatus::Ok, {}};
}

std::future<Ack> Session::redirect(const Redirect& r) {
  std::promise<Ack> promise;
  std::future<Ack> future = promise.get_future();
  std::lock_guard lk(mutex_);
  if (done_) {
    promise.set_value(Ack{command_name(r), AckStatus::Stale, "session finished"});
    return future;
  }
  queue_.push_back(Pending{r, std::move(promise)});
  cv_.notify_all();
  return future;
}

Ack Session::redirect_wait(const Redirect& r) {
  Ack ack = redirect(r).get();
  if (ack.status == AckStatus::Ok) {
    std::unique_lock lk(mutex_);
    if (paused_) cv_.wait(lk, [&] { return parked_ || done_; });
  }
  return ack;
}

void Session::cancel() {
  std::lock_guard lk(mutex_);
  cancel_ = true;
  cv_.notify_all();
}

bool Session::wait_for(std::chrono::milliseconds timeout) const {
  std::unique_lock lk(mutex_);
  return cv_.wait_for(lk, timeout, [&] { return done_; });
}

SessionResult Session::wait() const {
  std::unique_lock lk(mutex_);
  cv_.wait(lk, [&] { return done_; });
  return *cell_.result;
}

std::vector<LoggedCommand> Session::command_log() const {
  std::lock_guard lk(mutex_);
  return log_;
}

// ---------------------------------------------------------------------------

namespace {

class Script : public Steering {
 public:
  explicit Script(const std::vector<LoggedCommand>& log) : log_(log) {}

  std::optional<Redirect> on_node(const SearchView& view) override {
    if (next_ < log_.size() && log_[next_].node == view.nodes()) return log_[next_++].redirect;
    return std::nullopt;
  }

 private:
  const std::vector<LoggedCommand>& log_;
  std::size_t next_ = 0;
};

}  // namespace

SessionResult replay(const SessionConfig& config, const std::vector<LoggedCommand>& log, std::uint64_t* nodes) {
  Store store;
  Script script(log);
  Engine engine(store, config.engine, &script);
  SessionResult result;
  try {
    if (config.nimber) {
      const int n = engine.nimber_of(parse(config.root.position));
      result.nimber = n;
      result.outcome = n == config.root.nim_part ? Outcome::Loss : Outcome::Win;
    } else {
      result.outcome = engine.compute_win_loss(config.root);
    }
  } catch (const Error& e) {
    result.error = e.what();
  }
  if (nodes) *nodes = engine.nodes();
  return result;
}

// ---------------------------------------------------------------------------

std::uint64_t SessionManager::start(SessionConfig config) {
  std::lock_guard lk(mutex_);
  std::size_t running = 0;
  for (const auto& [id, s] : sessions_) {
    if (s->snapshot().status != SessionStatus::Done) ++running;
  }
  if (running >= max_running_) {
    throw SessionError("limit of " + std::to_string(max_running_) + " running sessions reached");
  }
  const std::uint64_t id = next_id_++;
  sessions_.emplace(id, std::make_shared<Session>(id, std::move(config)));
  return id;
}

std::shared_ptr<Session> SessionManager::get(std::uint64_t id) const {
  std::lock_guard lk(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionError("unknown session " + std::to_string(id));
  return it->second;
}

std::vector<std::uint64_t> SessionManager::ids() const {
  std::lock_guard lk(mutex_);
  std::vector<std::uint64_t> out;
  for (const auto& [id, s] : sessions_) out.push_back(id);
  return out;
}

std::optional<std::uint64_t> SessionManager::latest() const {
  std::lock_guard lk(mutex_);
  if (sessions_.empty()) return std::nullopt;
  return sessions_.rbegin()->first;
}

void SessionManager::remove(std::uint64_t id) {
  std::shared_ptr<Session> s;
  {
    std::lock_guard lk(mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) return;
    s = std::move(it->second);
    sessions_.erase(it);
  }
  // joins the worker outside the lock
  s.reset();
}

}  // namespace sprouts
