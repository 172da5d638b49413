#pragma once

// Flat experiment configuration: one `key = value` per line, `#` starts a
// comment, and `version = 1` is mandatory. Every getter validates its value;
// all failures surface as ConfigError so the driver can exit before writing
// anything.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treelab::cli {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class Config {
public:
  static Config parse(std::string_view text, const std::string& origin = "<config>");
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::string& origin() const { return origin_; }

  /// Throws ConfigError naming the first key outside `allowed`.
  void require_known(const std::set<std::string>& allowed) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  long get_int(const std::string& key, long fallback) const;
  std::optional<long> get_optional_int(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma separated integers; ranges "a-b" are expanded.
  std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;
  /// Items separated by ';', surrounding whitespace removed, empty items dropped.
  std::vector<std::string> get_list(const std::string& key, const std::vector<std::string>& fallback) const;

private:
  [[noreturn]] void bad(const std::string& key, const std::string& what) const;

  std::map<std::string, std::string> values_;
  std::string origin_;
};

} // namespace treelab::cli
