#pragma once

// Transposition table of losing couples: a canonized single land and its
// proven nimber. Winning couples are never stored.
//
// Text form, one record per line, lines sorted by key bytes:
//
//   <land>]! <nimber>

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace sprouts {

struct Record {
  std::string key;  // single-land position key, "...]!"
  int nimber = 0;

  friend bool operator==(const Record&, const Record&) = default;
};

class Store {
 public:
  Store() = default;
  Store(const Store& other);
  Store& operator=(const Store& other);
  ~Store();

  /// Throws StoreError when `key` already holds another nimber.
  void put(const std::string& key, int nimber);
  std::optional<int> get(std::string_view key) const;

  std::size_t size() const;
  bool contains(std::string_view key) const { return get(key).has_value(); }

  /// Records in key byte order.
  std::vector<Record> records() const;

  std::string to_text() const;
  /// Adds every line of `text` after validating it. Throws StoreError naming
  /// the line on a malformed line, a key that is not a canonized single land,
  /// a nimber above the land's lives or a conflict with an existing record.
  void merge_text(std::string_view text);

  void export_text(const std::filesystem::path& path) const;
  void import_text(const std::filesystem::path& path);

  /// Appends every later put to `path` so that an interrupted run can be
  /// resumed with import_text. Existing lines of the journal are loaded first.
  void attach_journal(const std::filesystem::path& path);
  /// Rewrites the journal sorted and without duplicates.
  void compact_journal();

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, int, std::less<>> records_;
  std::filesystem::path journal_path_;
  std::unique_ptr<std::ofstream> journal_;
};

/// Validates one store line and returns its record. Throws StoreError.
Record parse_record(std::string_view line);

}  // namespace sprouts
