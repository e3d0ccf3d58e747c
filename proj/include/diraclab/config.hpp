#pragma once

// Flat `section.key = value` configuration files. Blank lines and text after
// '#' are ignored. Values are kept as strings and converted on access; every
// conversion failure names the offending line and key.

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace diraclab {

class ConfigError : public std::runtime_error {
 public:
  /// line = 0 when the key is missing altogether.
  ConfigError(int line, std::string key, const std::string& message);
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

class Config {
 public:
  static Config parse(std::istream& in);
  static Config parse_string(const std::string& text);
  /// Throws ConfigError(0, path, ...) when the file cannot be opened.
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  /// Keys starting with `prefix` followed by '.'.
  std::vector<std::string> keys(const std::string& section) const;
  int line_of(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma- or whitespace-separated list of numbers.
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;

  void set(const std::string& key, const std::string& value) { entries_[key] = {value, 0}; }

 private:
  struct Entry {
    std::string value;
    int line;
  };
  const Entry& require(const std::string& key) const;
  std::map<std::string, Entry> entries_;
};

}  // namespace diraclab
