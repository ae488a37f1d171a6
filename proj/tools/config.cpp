#include "config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ultradist::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string strip_comment(const std::string& line) {
  const auto pos = line.find_first_of("#;");
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool parse_number(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && errno == 0 && std::isfinite(out);
}

}  // namespace

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config error: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
  ConfigFile cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string raw, section;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config error: " + where + "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError("config error: " + where + "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config error: " + where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config error: " + where + "missing key before '='");
    auto& slot = cfg.sections_[section];
    if (slot.count(key))
      throw ConfigError("config error: " + where + "duplicate key '" + key + "' (first set on line " +
                        std::to_string(slot[key].line) + ")");
    slot[key] = Entry{value, line_no, false};
  }
  return cfg;
}

ConfigFile::Entry* ConfigFile::find(const std::string& section, const std::string& key) {
  auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  auto k = s->second.find(key);
  if (k == s->second.end()) return nullptr;
  k->second.used = true;
  return &k->second;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

void ConfigFile::fail(const std::string& section, const std::string& key, const std::string& what) const {
  std::string where = origin_;
  auto s = sections_.find(section);
  if (s != sections_.end()) {
    auto k = s->second.find(key);
    if (k != s->second.end()) where += ":" + std::to_string(k->second.line);
  }
  throw ConfigError("config error: " + where + ": [" + section + "] " + key + ": " + what);
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key, const std::string& fallback) {
  const Entry* e = find(section, key);
  return e ? e->value : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key, double fallback) {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  double v = 0.0;
  if (!parse_number(e->value, v)) fail(section, key, "expected a number, got '" + e->value + "'");
  return v;
}

std::size_t ConfigFile::get_size(const std::string& section, const std::string& key, std::size_t fallback) {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  double v = 0.0;
  if (!parse_number(e->value, v) || v < 0 || v != std::floor(v) || v > 1e9)
    fail(section, key, "expected a nonnegative integer, got '" + e->value + "'");
  return static_cast<std::size_t>(v);
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key, bool fallback) {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
  if (e->value == "false" || e->value == "no" || e->value == "0") return false;
  fail(section, key, "expected true or false, got '" + e->value + "'");
}

std::vector<double> ConfigFile::get_doubles(const std::string& section, const std::string& key,
                                            const std::vector<double>& fallback) {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  std::vector<double> out;
  std::stringstream ss(e->value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    if (!parse_number(item, v)) fail(section, key, "bad list element '" + trim(item) + "'");
    out.push_back(v);
  }
  if (out.empty()) fail(section, key, "empty list");
  return out;
}

void ConfigFile::reject_unused() const {
  for (const auto& [section, keys] : sections_)
    for (const auto& [key, entry] : keys)
      if (!entry.used)
        throw ConfigError("config error: " + origin_ + ":" + std::to_string(entry.line) + ": unknown key '" + key +
                          "' in section [" + section + "]");
}

}  // namespace ultradist::cli
