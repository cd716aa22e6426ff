#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ckl/cesaro.hpp"

namespace ckl::cli {

/// Flat key = value experiment configuration. Every key a command reads is
/// marked consumed; finish() rejects leftovers so typos fail loudly.
class Config {
 public:
  static Config load(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback);
  std::string require_string(const std::string& key);
  int get_int(const std::string& key, int fallback);
  double get_double(const std::string& key, double fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::vector<int> require_int_list(const std::string& key);
  std::vector<double> require_double_list(const std::string& key);
  std::vector<std::string> require_string_list(const std::string& key);

  /// Cesaro orders; accepts numbers and the token "proj".
  std::vector<CesaroOrder> require_order_list(const std::string& key);

  void finish() const;  // throws if any key was never consumed
  const std::string& raw() const { return raw_; }

 private:
  std::map<std::string, std::string> kv_;
  mutable std::set<std::string> used_;
  std::string raw_;
};

std::uint64_t fnv1a(const std::string& data);

std::string format_order(const CesaroOrder& order);

}  // namespace ckl::cli
