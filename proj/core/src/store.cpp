#include "sprouts/store.hpp"

#include <charconv>
#include <sstream>

#include "sprouts/canonizer.hpp"
#include "sprouts/error.hpp"
#include "sprouts/position.hpp"

namespace sprouts {

Store::Store(const Store& other) {
  std::shared_lock lock(other.mutex_);
  records_ = other.records_;
}

Store& Store::operator=(const Store& other) {
  if (this == &other) return *this;
  std::map<std::string, int, std::less<>> copy;
  {
    std::shared_lock lock(other.mutex_);
    copy = other.records_;
  }
  std::unique_lock lock(mutex_);
  records_ = std::move(copy);
  return *this;
}

Store::~Store() = default;

void Store::put(const std::string& key, int nimber) {
  std::unique_lock lock(mutex_);
  const auto [it, inserted] = records_.try_emplace(key, nimber);
  if (!inserted) {
    if (it->second != nimber) {
      throw StoreError("conflicting nimbers " + std::to_string(it->second) + " and " + std::to_string(nimber) +
                       " for " + key);
    }
    return;
  }
  if (journal_) {
    *journal_ << key << ' ' << nimber << '\n';
    journal_->flush();
  }
}

std::optional<int> Store::get(std::string_view key) const {
  std::shared_lock lock(mutex_);
  const auto it = records_.find(key);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::size_t Store::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

std::vector<Record> Store::records() const {
  std::shared_lock lock(mutex_);
  std::vector<Record> out;
  out.reserve(records_.size());
  for (const auto& [key, nimber] : records_) out.push_back(Record{key, nimber});
  return out;
}

std::string Store::to_text() const {
  std::string out;
  for (const Record& r : records()) {
    out += r.key;
    out += ' ';
    out += std::to_string(r.nimber);
    out += '\n';
  }
  return out;
}

Record parse_record(std::string_view line) {
  const auto space = line.find(' ');
  if (space == std::string_view::npos || space == 0) throw StoreError("expected '<key> <nimber>'");
  const std::string_view key = line.substr(0, space);
  const std::string_view number = line.substr(space + 1);
  int nimber = -1;
  const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), nimber);
  if (ec != std::errc{} || end != number.data() + number.size() || nimber < 0) {
    throw StoreError("bad nimber '" + std::string(number) + "'");
  }
  Position p;
  try {
    p = parse(key);
  } catch (const ParseError& e) {
    throw StoreError(std::string("bad key: ") + e.what());
  }
  if (p.stage != Stage::Simplified || p.lands.size() != 1) throw StoreError("key is not a single land");
  if (canonize(p).text != key) throw StoreError("key is not canonized");
  if (nimber > total_lives(p)) throw StoreError("nimber exceeds the lives of the land");
  return Record{std::string(key), nimber};
}

void Store::merge_text(std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    try {
      const Record r = parse_record(line);
      put(r.key, r.nimber);
    } catch (const StoreError& e) {
      throw StoreError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void Store::export_text(const std::filesystem::path& path) const {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError("cannot write " + tmp.string());
    out << to_text();
    if (!out) throw StoreError("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void Store::import_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  merge_text(buf.str());
}

void Store::attach_journal(const std::filesystem::path& path) {
  if (std::filesystem::exists(path)) import_text(path);
  std::unique_lock lock(mutex_);
  journal_path_ = path;
  journal_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::app);
  if (!*journal_) throw StoreError("cannot append to " + path.string());
}

void Store::compact_journal() {
  std::filesystem::path path;
  {
    std::unique_lock lock(mutex_);
    if (!journal_) return;
    journal_.reset();
    path = journal_path_;
  }
  export_text(path);
  std::unique_lock lock(mutex_);
  journal_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::app);
}

}  // namespace sprouts
