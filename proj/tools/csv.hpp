#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckl::cli {

/// Line-oriented CSV writer; numeric fields are formatted with %.17g so equal
/// doubles always produce identical bytes.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("csv: cannot open " + path + " for writing");
  }

  void comment(const std::string& line) { out_ << "# " << line << '\n'; }
  void line(const std::string& l) { out_ << l << '\n'; }

  static std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
  static std::string num(int v) { return std::to_string(v); }
  static std::string num(long v) { return std::to_string(v); }

  static std::string join(const std::vector<std::string>& fields) {
    std::string s;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) s += ',';
      s += fields[i];
    }
    return s;
  }

  /// Joins vector components with ';' so they live in a single CSV field.
  static std::string pack(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ';';
      s += num(v[i]);
    }
    return s;
  }

 private:
  std::ofstream out_;
};

}  // namespace ckl::cli
