#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ultradist::cli {

/// A problem with the configuration; `what()` already names file and line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Line-oriented `key = value` file with `[section]` headers. '#' and ';'
/// start comments. Keys before any header belong to section "".
class ConfigFile {
 public:
  struct Entry {
    std::string value;
    std::size_t line = 0;
    bool used = false;
  };

  static ConfigFile load(const std::string& path);
  static ConfigFile parse(const std::string& text, const std::string& origin);

  const std::string& origin() const noexcept { return origin_; }
  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key, const std::string& fallback);
  double get_double(const std::string& section, const std::string& key, double fallback);
  std::size_t get_size(const std::string& section, const std::string& key, std::size_t fallback);
  bool get_bool(const std::string& section, const std::string& key, bool fallback);
  std::vector<double> get_doubles(const std::string& section, const std::string& key,
                                  const std::vector<double>& fallback);

  /// Error for a key the program never read, so typos do not pass silently.
  void reject_unused() const;

  [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& what) const;

 private:
  Entry* find(const std::string& section, const std::string& key);

  std::string origin_;
  std::map<std::string, std::map<std::string, Entry>> sections_;
};

}  // namespace ultradist::cli
