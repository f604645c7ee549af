// Text curve format:
//   open N | closed N
//   x y z        (N lines)
#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "isotopy/geometry.hpp"

namespace isotopy {

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_curve(std::ostream& os, const PLCurve& c) {
  os << (c.closed() ? "closed " : "open ") << c.vertices().size() << '\n';
  for (const auto& p : c.vertices())
    os << format_real(p.x) << ' ' << format_real(p.y) << ' ' << format_real(p.z) << '\n';
}

inline std::string curve_to_string(const PLCurve& c) {
  std::ostringstream os;
  write_curve(os, c);
  return os.str();
}

inline PLCurve read_curve(std::istream& is) {
  std::string kind;
  std::size_t n = 0;
  if (!(is >> kind >> n) || (kind != "open" && kind != "closed"))
    throw std::runtime_error("curve file: bad header");
  std::vector<Point3> pts(n);
  for (auto& p : pts)
    if (!(is >> p.x >> p.y >> p.z)) throw std::runtime_error("curve file: truncated vertex list");
  return PLCurve(std::move(pts), kind == "closed");
}

inline PLCurve curve_from_string(const std::string& s) {
  std::istringstream is(s);
  return read_curve(is);
}

inline void save_curve(const std::string& path, const PLCurve& c) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_curve(os, c);
  if (!os) throw std::runtime_error("write failed: " + path);
}

inline PLCurve load_curve(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_curve(is);
}

}  // namespace isotopy
