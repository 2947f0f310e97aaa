#include "wpevo/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wpevo/errors.hpp"

namespace wpevo {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    std::string part = trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (!part.empty()) parts.push_back(std::move(part));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(std::string_view text, std::string_view what) {
  const std::string clean = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(clean.data(), clean.data() + clean.size(), value);
  if (clean.empty() || ec != std::errc{} || ptr != clean.data() + clean.size() ||
      !std::isfinite(value)) {
    throw ConfigError(std::string(what) + ": expected a real number, got '" + clean + "'");
  }
  return value;
}

std::uint64_t parse_count(std::string_view text, std::string_view what) {
  const std::string clean = trim(text);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(clean.data(), clean.data() + clean.size(), value);
  if (clean.empty() || ec != std::errc{} || ptr != clean.data() + clean.size()) {
    throw ConfigError(std::string(what) + ": expected a non-negative integer, got '" + clean +
                      "'");
  }
  return value;
}

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  KeyValueConfig config;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("config line " + std::to_string(line_no) + ": empty key");
    config.entries_[std::move(key)] = std::move(value);
  }
  return config;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse(buffer.str());
  } catch (const ParseError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::optional<std::string> KeyValueConfig::get(std::string_view key) const {
  const auto it = entries_.find(std::string(key));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double KeyValueConfig::real(std::string_view key, double fallback) const {
  const auto value = get(key);
  return value ? parse_real(*value, key) : fallback;
}

std::uint64_t KeyValueConfig::count(std::string_view key, std::uint64_t fallback) const {
  const auto value = get(key);
  return value ? parse_count(*value, key) : fallback;
}

bool KeyValueConfig::flag(std::string_view key, bool fallback) const {
  const auto value = get(key);
  if (!value) return fallback;
  if (*value == "true" || *value == "1" || *value == "yes") return true;
  if (*value == "false" || *value == "0" || *value == "no") return false;
  throw ConfigError(std::string(key) + ": expected true|false, got '" + *value + "'");
}

std::vector<std::string> KeyValueConfig::list(std::string_view key) const {
  const auto value = get(key);
  return value ? split(*value, ',') : std::vector<std::string>{};
}

std::string KeyValueConfig::to_text() const {
  std::string out;
  for (const auto& [key, value] : entries_) out += key + " = " + value + "\n";
  return out;
}

}  // namespace wpevo
