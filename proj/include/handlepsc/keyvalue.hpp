#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace handlepsc {

/// Flat `key = value` text records. `#` starts a comment; blank lines are
/// ignored; duplicate keys are an error.
class KeyValues {
 public:
  static KeyValues parse(std::string_view text);
  static KeyValues load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get_string(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<int> get_int(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, int value);

  /// Keys not listed in `allowed`.
  std::vector<std::string> unknown_keys(
      const std::vector<std::string_view>& allowed) const;

  /// Sorted `key = value` lines.
  std::string to_text() const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

/// Shortest round-trip decimal text for a double.
std::string format_double(double v);

}  // namespace handlepsc
