#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace biocomb {

/// Plain-text `key = value` configuration. `#` starts a comment; list values
/// are comma separated. Keys are case sensitive and may appear once.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig parse_string(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string get_string(const std::string& key, const std::optional<std::string>& fallback = std::nullopt) const;
  std::vector<std::string> get_list(const std::string& key) const;
  double get_double(const std::string& key, std::optional<double> fallback = std::nullopt) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::size_t get_count(const std::string& key, std::optional<std::size_t> fallback = std::nullopt) const;
  std::vector<std::size_t> get_counts(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key, std::optional<std::uint64_t> fallback = std::nullopt) const;

  /// Throws ValidationError naming the first key not in `known`.
  void require_known(const std::set<std::string>& known) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

double parse_double(const std::string& text, const std::string& what);
std::uint64_t parse_u64(const std::string& text, const std::string& what);

}  // namespace biocomb
