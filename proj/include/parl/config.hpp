#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace parl {

/// Flat `key = value` configuration with dotted section names and `#`
/// comments. Every lookup records the resolved value (default or explicit),
/// so echo() reproduces the full effective configuration of a run.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig from_file(const std::string& path);
  static KeyValueConfig from_text(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& def);
  double get_double(const std::string& key, double def);
  std::int64_t get_int(const std::string& key, std::int64_t def);
  std::uint64_t get_u64(const std::string& key, std::uint64_t def);
  bool get_bool(const std::string& key, bool def);
  /// Comma-separated list of reals; empty default when the key is absent.
  std::vector<double> get_double_list(const std::string& key);

  /// Keys that were set but never read; non-empty means a typo in the input.
  std::vector<std::string> unused_keys() const;

  /// Sorted `key = value` lines covering every key resolved so far.
  std::string echo() const;

 private:
  std::string require_raw(const std::string& key);

  std::map<std::string, std::string> values_;
  std::map<std::string, std::string> resolved_;
  std::set<std::string> used_;
};

}  // namespace parl
