#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "spreadnet/common.hpp"

namespace spreadnet {

/// Fixed-precision decimal formatting. Output is locale-independent and
/// byte-stable for identical doubles, which the reproducibility contract
/// (identical manifest -> identical CSV) relies on.
inline std::string format_fixed(double v, int digits) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

/// Shortest round-trip representation; for values that are conceptually
/// exact (counts stored as double) rather than measured.
inline std::string format_general(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back = 0.0;
  std::sscanf(buf, "%lf", &back);
  for (int digits = 15; digits <= 16; ++digits) {
    char shorter[64];
    std::snprintf(shorter, sizeof(shorter), "%.*g", digits, v);
    std::sscanf(shorter, "%lf", &back);
    if (back == v) return shorter;
  }
  return buf;
}

/// Flat key=value run manifest ('#' lines are comments). Keys keep insertion
/// order so reruns diff cleanly.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value) {
    for (auto& kv : entries_) {
      if (kv.first == key) {
        kv.second = value;
        return;
      }
    }
    entries_.emplace_back(key, value);
  }
  void set(const std::string& key, double value) { set(key, format_general(value)); }
  template <typename T>
    requires std::integral<T> && (!std::same_as<T, bool>)
  void set(const std::string& key, T value) {
    set(key, std::to_string(value));
  }

  const std::string* find(const std::string& key) const {
    for (const auto& kv : entries_)
      if (kv.first == key) return &kv.second;
    return nullptr;
  }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  /// Values holding separators are double-quoted so the manifest can be fed
  /// back verbatim as a config file.
  static std::string quote_if_needed(const std::string& v) {
    if (v.empty() || v.find_first_of(" ,=#\"'") == std::string::npos) return v;
    std::string quoted = "\"";
    for (char c : v) {
      if (c == '"' || c == '\\') quoted += '\\';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  }

  void write(std::ostream& out) const {
    for (const auto& [k, v] : entries_) out << k << '=' << quote_if_needed(v) << '\n';
  }

  void write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    write(out);
  }

  static Manifest parse(std::istream& in) {
    Manifest m;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const std::size_t pos = line.find_first_not_of(" \t");
      if (pos == std::string::npos || line[pos] == '#') continue;
      const std::size_t eq = line.find('=', pos);
      if (eq == std::string::npos) throw ParseError(line_no, "expected key=value");
      std::string value = line.substr(eq + 1);
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
        std::string unescaped;
        for (std::size_t i = 1; i + 1 < value.size(); ++i) {
          if (value[i] == '\\' && i + 2 < value.size()) ++i;
          unescaped += value[i];
        }
        value = std::move(unescaped);
      }
      m.set(line.substr(pos, eq - pos), value);
    }
    return m;
  }

  static Manifest parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return parse(in);
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: LF line endings everywhere
  if (!out) throw Error("cannot write " + path);
  return out;
}

}  // namespace spreadnet
