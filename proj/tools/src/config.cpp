#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace treelab::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool valid_key(const std::string& k) {
  if (k.empty() || !(std::islower(static_cast<unsigned char>(k[0])) || k[0] == '_'))
    return false;
  return std::all_of(k.begin(), k.end(), [](char c) {
    return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_';
  });
}

template <class T>
std::optional<T> parse_number(const std::string& s) {
  T value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end)
    return std::nullopt;
  return value;
}

} // namespace

Config Config::parse(std::string_view text, const std::string& origin) {
  Config c;
  c.origin_ = origin;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    const std::string body = trim(line);
    if (body.empty())
      continue;
    const auto eq = body.find('=');
    const std::string where = origin + ":" + std::to_string(number);
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected `key = value`");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (!valid_key(key))
      throw ConfigError(where + ": invalid key `" + key + "`");
    if (!c.values_.emplace(key, value).second)
      throw ConfigError(where + ": duplicate key `" + key + "`");
  }
  if (!c.has("version"))
    throw ConfigError(origin + ": missing `version = 1`");
  if (c.values_.at("version") != "1")
    throw ConfigError(origin + ": unsupported config version `" + c.values_.at("version") + "`");
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

void Config::require_known(const std::set<std::string>& allowed) const {
  for (const auto& [k, v] : values_)
    if (k != "version" && !allowed.count(k))
      throw ConfigError(origin_ + ": unknown key `" + k + "`");
}

void Config::bad(const std::string& key, const std::string& what) const {
  throw ConfigError(origin_ + ": key `" + key + "` " + what + " (got `" + values_.at(key) + "`)");
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

long Config::get_int(const std::string& key, long fallback) const {
  return get_optional_int(key).value_or(fallback);
}

std::optional<long> Config::get_optional_int(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    return std::nullopt;
  auto v = parse_number<long>(it->second);
  if (!v)
    bad(key, "must be an integer");
  return v;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end())
    return fallback;
  auto v = parse_number<std::uint64_t>(it->second);
  if (!v)
    bad(key, "must be an unsigned integer");
  return *v;
}

double Config::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end())
    return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size())
      bad(key, "must be a number");
    return v;
  } catch (const std::logic_error&) {
    bad(key, "must be a number");
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end())
    return fallback;
  if (it->second == "true" || it->second == "1")
    return true;
  if (it->second == "false" || it->second == "0")
    return false;
  bad(key, "must be true or false");
}

std::vector<int> Config::get_int_list(const std::string& key, const std::vector<int>& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end())
    return fallback;
  std::vector<int> out;
  std::istringstream in(it->second);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    const auto dash = item.find('-', 1);
    if (dash != std::string::npos) {
      auto lo = parse_number<int>(trim(item.substr(0, dash)));
      auto hi = parse_number<int>(trim(item.substr(dash + 1)));
      if (!lo || !hi || *lo > *hi)
        bad(key, "has an invalid range");
      for (int v = *lo; v <= *hi; ++v)
        out.push_back(v);
    } else {
      auto v = parse_number<int>(item);
      if (!v)
        bad(key, "must be a comma separated list of integers");
      out.push_back(*v);
    }
  }
  if (out.empty())
    bad(key, "must not be empty");
  return out;
}

std::vector<std::string> Config::get_list(const std::string& key, const std::vector<std::string>& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end())
    return fallback;
  std::vector<std::string> out;
  std::istringstream in(it->second);
  std::string item;
  while (std::getline(in, item, ';')) {
    item = trim(item);
    if (!item.empty())
      out.push_back(item);
  }
  return out;
}

} // namespace treelab::cli
