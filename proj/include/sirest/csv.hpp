#ifndef SIREST_CSV_HPP
#define SIREST_CSV_HPP

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sirest {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "na";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// A stored +inf under a finite horizon means "not resolved", not "never".
inline std::string format_time(double t, double horizon) {
  if (std::isinf(t) && t > 0 && !std::isinf(horizon)) return "na";
  return format_double(t);
}

inline double parse_double(std::string_view s) {
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(std::string(s), &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("cannot parse number: '" + std::string(s) + "'");
  }
  if (pos != s.size()) throw std::runtime_error("trailing junk in number: '" + std::string(s) + "'");
  return v;
}

inline std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace sirest

#endif  // SIREST_CSV_HPP
