#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wpevo {

/// Flat `key = value` text. `#` starts a comment; blank lines are ignored.
class KeyValueConfig {
 public:
  /// Throws ParseError naming the line on malformed input.
  static KeyValueConfig parse(std::string_view text);
  /// Throws ConfigError when the file cannot be read.
  static KeyValueConfig load(const std::string& path);

  bool has(std::string_view key) const { return entries_.contains(std::string(key)); }
  std::optional<std::string> get(std::string_view key) const;
  void set(std::string key, std::string value) { entries_[std::move(key)] = std::move(value); }

  // Typed accessors; a present but malformed value throws ConfigError.
  double real(std::string_view key, double fallback) const;
  std::uint64_t count(std::string_view key, std::uint64_t fallback) const;
  bool flag(std::string_view key, bool fallback) const;
  std::vector<std::string> list(std::string_view key) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }
  std::string to_text() const;

 private:
  std::map<std::string, std::string> entries_;
};

double parse_real(std::string_view text, std::string_view what);
std::uint64_t parse_count(std::string_view text, std::string_view what);
std::vector<std::string> split(std::string_view text, char sep);
std::string trim(std::string_view text);

}  // namespace wpevo
