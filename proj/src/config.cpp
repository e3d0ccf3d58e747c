#include "diraclab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace diraclab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool parse_number(const std::string& text, double& out) {
  // strtod accepts inf/nan and hex floats; the configs only need plain decimals.
  const std::string t = trim(text);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

}  // namespace

ConfigError::ConfigError(int line, std::string key, const std::string& message)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ", key '" + key + "': " + message
                                  : "config key '" + key + "': " + message),
      line_(line),
      key_(std::move(key)) {}

Config Config::parse(std::istream& in) {
  Config cfg;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(line, text, "expected 'section.key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, key, "empty key");
    const bool valid = std::all_of(key.begin(), key.end(), [](char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '-';
    });
    if (!valid || key.find('.') == std::string::npos || key.front() == '.' || key.back() == '.')
      throw ConfigError(line, key, "keys must look like section.key");
    if (cfg.entries_.count(key)) throw ConfigError(line, key, "duplicate key");
    cfg.entries_[key] = {value, line};
  }
  return cfg;
}

Config Config::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, path, "cannot open config file");
  return parse(in);
}

std::vector<std::string> Config::keys(const std::string& section) const {
  std::vector<std::string> out;
  const std::string prefix = section + ".";
  for (const auto& [k, e] : entries_)
    if (k.compare(0, prefix.size(), prefix) == 0) out.push_back(k);
  return out;
}

int Config::line_of(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

const Config::Entry& Config::require(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError(0, key, "missing required key");
  return it->second;
}

std::string Config::get_string(const std::string& key) const { return require(key).value; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const {
  const Entry& e = require(key);
  double v = 0;
  if (!parse_number(e.value, v)) throw ConfigError(e.line, key, "expected a number, got '" + e.value + "'");
  return v;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
  const Entry& e = require(key);
  int v = 0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  const auto [ptr, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(e.line, key, "expected an integer, got '" + e.value + "'");
  return v;
}

int Config::get_int(const std::string& key, int fallback) const { return has(key) ? get_int(key) : fallback; }

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const Entry& e = require(key);
  std::uint64_t v = 0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  const auto [ptr, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(e.line, key, "expected an unsigned integer, got '" + e.value + "'");
  return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Entry& e = require(key);
  if (e.value == "true" || e.value == "yes" || e.value == "1" || e.value == "on") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0" || e.value == "off") return false;
  throw ConfigError(e.line, key, "expected a boolean, got '" + e.value + "'");
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  const Entry& e = require(key);
  std::string text = e.value;
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    double v = 0;
    if (!parse_number(tok, v)) throw ConfigError(e.line, key, "bad list entry '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(e.line, key, "empty list");
  return out;
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
  return has(key) ? get_doubles(key) : fallback;
}

}  // namespace diraclab
