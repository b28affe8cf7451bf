#include "shbif/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace shbif {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    }
    if (cfg.entries_.contains(key)) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key \"" + key + "\"");
    }
    cfg.entries_[key] = value;
  }
  return cfg;
}

const std::string* KeyValueConfig::lookup(const std::string& key) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  consumed_.insert(key);
  return &it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) {
  const std::string* v = lookup(key);
  return v ? *v : fallback;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) {
  const std::string* v = lookup(key);
  if (!v) return fallback;
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(*v, &used);
  } catch (const std::exception&) {
    throw ConfigError("key \"" + key + "\": \"" + *v + "\" is not a number");
  }
  if (used != v->size() || !std::isfinite(out)) {
    throw ConfigError("key \"" + key + "\": \"" + *v + "\" is not a finite number");
  }
  return out;
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) {
  const std::string* v = lookup(key);
  if (!v) return fallback;
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(*v, &used);
  } catch (const std::exception&) {
    throw ConfigError("key \"" + key + "\": \"" + *v + "\" is not an integer");
  }
  if (used != v->size()) {
    throw ConfigError("key \"" + key + "\": \"" + *v + "\" is not an integer");
  }
  return out;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) {
  const std::string* v = lookup(key);
  if (!v) return fallback;
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(*v, &used);
  } catch (const std::exception&) {
    throw ConfigError("key \"" + key + "\": \"" + *v + "\" is not a nonnegative integer");
  }
  if (used != v->size() || v->find('-') != std::string::npos) {
    throw ConfigError("key \"" + key + "\": \"" + *v + "\" is not a nonnegative integer");
  }
  return out;
}

std::vector<double> KeyValueConfig::get_grid(const std::string& key,
                                             const std::vector<double>& fallback) {
  const std::string* v = lookup(key);
  if (!v) return fallback;
  std::vector<double> out;
  std::istringstream in(*v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("key \"" + key + "\": \"" + item + "\" is not a number");
    }
    if (used != item.size() || !std::isfinite(x)) {
      throw ConfigError("key \"" + key + "\": \"" + item + "\" is not a finite number");
    }
    out.push_back(x);
  }
  if (out.empty()) throw ConfigError("key \"" + key + "\": empty list");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) {
      throw ConfigError("key \"" + key + "\": entries must be strictly increasing");
    }
  }
  return out;
}

void KeyValueConfig::finish() const {
  for (const auto& [key, value] : entries_) {
    if (!consumed_.contains(key)) {
      throw ConfigError("unknown key \"" + key + "\"");
    }
  }
}

}  // namespace shbif
