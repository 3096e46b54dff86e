#include "biocomb/config.h"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "biocomb/errors.h"

namespace biocomb {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ValidationError(what + ": '" + text + "' is not a finite number");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  if (t.empty() || t[0] == '-') throw ValidationError(what + ": '" + text + "' is not a non-negative integer");
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw ValidationError(what + ": '" + text + "' is not a non-negative integer");
  }
  return static_cast<std::uint64_t>(v);
}

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ValidationError("config line " + std::to_string(line_no) + ": empty key");
    if (cfg.values_.count(key)) {
      throw ValidationError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    cfg.values_[key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  return parse(in);
}

std::string KeyValueConfig::get_string(const std::string& key, const std::optional<std::string>& fallback) const {
  if (const auto it = values_.find(key); it != values_.end()) return it->second;
  if (fallback) return *fallback;
  throw ValidationError("config is missing required key '" + key + "'");
}

std::vector<std::string> KeyValueConfig::get_list(const std::string& key) const {
  std::vector<std::string> out;
  std::istringstream ss(get_string(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ValidationError("config key '" + key + "' has an empty list item");
    out.push_back(item);
  }
  if (out.empty()) throw ValidationError("config key '" + key + "' is empty");
  return out;
}

double KeyValueConfig::get_double(const std::string& key, std::optional<double> fallback) const {
  if (!has(key) && fallback) return *fallback;
  return parse_double(get_string(key), key);
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : get_list(key)) out.push_back(parse_double(item, key));
  return out;
}

std::size_t KeyValueConfig::get_count(const std::string& key, std::optional<std::size_t> fallback) const {
  if (!has(key) && fallback) return *fallback;
  return static_cast<std::size_t>(parse_u64(get_string(key), key));
}

std::vector<std::size_t> KeyValueConfig::get_counts(const std::string& key) const {
  std::vector<std::size_t> out;
  for (const auto& item : get_list(key)) out.push_back(static_cast<std::size_t>(parse_u64(item, key)));
  return out;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::optional<std::uint64_t> fallback) const {
  if (!has(key) && fallback) return *fallback;
  return parse_u64(get_string(key), key);
}

void KeyValueConfig::require_known(const std::set<std::string>& known) const {
  for (const auto& [key, value] : values_) {
    if (!known.count(key)) throw ValidationError("unknown config key '" + key + "'");
  }
}

}  // namespace biocomb
