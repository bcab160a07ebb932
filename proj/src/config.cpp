#include "parl/config.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace parl {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& raw) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': not a number: '" + raw + "'");
  }
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

KeyValueConfig KeyValueConfig::from_text(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    cfg.set(key, value);
  }
  return cfg;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

bool KeyValueConfig::has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::string KeyValueConfig::require_raw(const std::string& key) {
  used_.insert(key);
  return values_.at(key);
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& def) {
  const std::string v = has(key) ? require_raw(key) : def;
  resolved_[key] = v;
  return v;
}

double KeyValueConfig::get_double(const std::string& key, double def) {
  double v = def;
  if (has(key)) v = parse_double(key, require_raw(key));
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  resolved_[key] = ss.str();
  return v;
}

std::int64_t KeyValueConfig::get_int(const std::string& key, std::int64_t def) {
  std::int64_t v = def;
  if (has(key)) {
    const std::string raw = require_raw(key);
    const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size())
      throw std::invalid_argument("config key '" + key + "': not an integer: '" + raw + "'");
  }
  resolved_[key] = std::to_string(v);
  return v;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t def) {
  std::uint64_t v = def;
  if (has(key)) {
    const std::string raw = require_raw(key);
    const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size())
      throw std::invalid_argument("config key '" + key +
                                  "': not a non-negative integer: '" + raw + "'");
  }
  resolved_[key] = std::to_string(v);
  return v;
}

bool KeyValueConfig::get_bool(const std::string& key, bool def) {
  bool v = def;
  if (has(key)) {
    const std::string raw = require_raw(key);
    if (raw == "true" || raw == "1") v = true;
    else if (raw == "false" || raw == "0") v = false;
    else
      throw std::invalid_argument("config key '" + key + "': expected true/false: '" + raw + "'");
  }
  resolved_[key] = v ? "true" : "false";
  return v;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) {
  std::vector<double> out;
  if (!has(key)) return out;
  const std::string raw = require_raw(key);
  resolved_[key] = raw;
  std::istringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(key, item));
  }
  return out;
}

std::vector<std::string> KeyValueConfig::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : values_)
    if (!used_.count(k)) out.push_back(k);
  return out;
}

std::string KeyValueConfig::echo() const {
  std::string out;
  for (const auto& [k, v] : resolved_) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

}  // namespace parl
