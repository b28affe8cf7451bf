// Flat key-value run configuration: "key = value" lines, # comments. Typed
// getters mark keys consumed and finish() rejects leftovers, so a misspelled
// key fails the run instead of silently falling back to a default.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace shbif {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_text(const std::string& text);

  bool has(const std::string& key) const { return entries_.contains(key); }

  // Raw parsed entries, for echoing the configuration into run summaries.
  const std::map<std::string, std::string>& entries() const { return entries_; }

  std::string get_string(const std::string& key, const std::string& fallback);
  double get_double(const std::string& key, double fallback);
  long long get_int(const std::string& key, long long fallback);
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);

  // Comma-separated list; every entry finite, strictly increasing.
  std::vector<double> get_grid(const std::string& key, const std::vector<double>& fallback);

  // Throws ConfigError naming the first key that no getter consumed.
  void finish() const;

 private:
  const std::string* lookup(const std::string& key);

  std::map<std::string, std::string> entries_;
  std::set<std::string> consumed_;
};

}  // namespace shbif
