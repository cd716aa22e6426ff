#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ckl::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  Config cfg;
  std::ostringstream raw;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    raw << line << '\n';
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: line " + std::to_string(lineno) + " is not key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw std::runtime_error("config: empty key at line " + std::to_string(lineno));
    if (cfg.kv_.count(key))
      throw std::runtime_error("config: duplicate key '" + key + "'");
    cfg.kv_[key] = value;
  }
  cfg.raw_ = raw.str();
  return cfg;
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get_string(const std::string& key, const std::string& fallback) {
  used_.insert(key);
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

std::string Config::require_string(const std::string& key) {
  used_.insert(key);
  const auto it = kv_.find(key);
  if (it == kv_.end()) throw std::runtime_error("config: missing required key '" + key + "'");
  return it->second;
}

int Config::get_int(const std::string& key, int fallback) {
  const std::string s = get_string(key, "");
  return s.empty() ? fallback : std::stoi(s);
}

double Config::get_double(const std::string& key, double fallback) {
  const std::string s = get_string(key, "");
  return s.empty() ? fallback : std::stod(s);
}

bool Config::get_bool(const std::string& key, bool fallback) {
  const std::string s = get_string(key, "");
  if (s.empty()) return fallback;
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::runtime_error("config: key '" + key + "' is not a boolean");
}

std::vector<int> Config::require_int_list(const std::string& key) {
  std::vector<int> out;
  for (const auto& tok : split(require_string(key), ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw std::runtime_error("config: key '" + key + "' is an empty list");
  return out;
}

std::vector<double> Config::require_double_list(const std::string& key) {
  std::vector<double> out;
  for (const auto& tok : split(require_string(key), ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw std::runtime_error("config: key '" + key + "' is an empty list");
  return out;
}

std::vector<std::string> Config::require_string_list(const std::string& key) {
  auto out = split(require_string(key), ',');
  if (out.empty()) throw std::runtime_error("config: key '" + key + "' is an empty list");
  return out;
}

std::vector<CesaroOrder> Config::require_order_list(const std::string& key) {
  std::vector<CesaroOrder> out;
  for (const auto& tok : split(require_string(key), ',')) {
    if (tok == "proj" || tok == "projection")
      out.push_back(CesaroOrder::projection());
    else
      out.push_back(CesaroOrder::of(std::stod(tok)));
  }
  if (out.empty()) throw std::runtime_error("config: key '" + key + "' is an empty list");
  return out;
}

void Config::finish() const {
  for (const auto& [key, value] : kv_)
    if (!used_.count(key)) throw std::runtime_error("config: unknown key '" + key + "'");
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string format_order(const CesaroOrder& order) {
  if (order.is_projection) return "proj";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", order.delta);
  return buf;
}

}  // namespace ckl::cli
