// Copyright 2026 The piu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef PIU_IO_TIMELINE_CSV_HPP_
#define PIU_IO_TIMELINE_CSV_HPP_

#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "piu/timeline.hpp"

namespace piu::io {

/// Malformed input file; `line` is 1-based, 0 when not line-specific.
class FormatError : public std::runtime_error {
public:
  FormatError(const std::string &what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// 17 significant digits, so timelines round-trip bit-exactly.
inline std::string format_time(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", t);
  return buf;
}

/*
 * Layout:
 *   # window_end=<hours>
 *   unit_id,time_h
 *   <unit>,<time>
 * All timelines in one file share the window.
 */
inline void write_timeline_csv(std::ostream &os,
                               std::span<const EventTimeline> timelines) {
  if (timelines.empty()) {
    throw std::invalid_argument("nothing to write");
  }
  const double window = timelines.front().window_end();
  os << "# window_end=" << format_time(window) << "\n";
  os << "unit_id,time_h\n";
  for (const auto &t : timelines) {
    if (t.window_end() != window) {
      throw std::invalid_argument("timelines in one file must share the window");
    }
    const std::string unit = t.unit_id().value_or("");
    for (double x : t.events()) {
      os << unit << "," << format_time(x) << "\n";
    }
  }
}

inline void write_timeline_csv(std::ostream &os, const EventTimeline &t) {
  write_timeline_csv(os, std::span<const EventTimeline>(&t, 1));
}

namespace detail {

inline std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string &s, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception &) {
    throw FormatError("not a number: '" + s + "'", line);
  }
  if (used != s.size()) {
    throw FormatError("not a number: '" + s + "'", line);
  }
  return v;
}

} // namespace detail

/*
 * Reads one timeline per distinct unit_id, in order of first appearance.
 * Rows of one unit must be non-decreasing in time. A file without data rows
 * yields a single empty timeline.
 */
inline std::vector<EventTimeline> read_timeline_csv(std::istream &is) {
  std::string raw;
  std::size_t lineno = 0;
  std::optional<double> window;
  bool header = false;
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> by_unit;
  while (std::getline(is, raw)) {
    ++lineno;
    const std::string line = detail::trim(raw);
    if (line.empty()) {
      continue;
    }
    if (line[0] == '#') {
      const std::string body = detail::trim(line.substr(1));
      const std::string key = "window_end=";
      if (body.rfind(key, 0) == 0) {
        window = detail::parse_double(detail::trim(body.substr(key.size())),
                                      lineno);
      }
      continue;
    }
    if (!header) {
      if (line != "unit_id,time_h") {
        throw FormatError("expected header 'unit_id,time_h'", lineno);
      }
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw FormatError("expected two columns", lineno);
    }
    const std::string unit = detail::trim(line.substr(0, comma));
    const double t = detail::parse_double(detail::trim(line.substr(comma + 1)),
                                          lineno);
    auto [it, inserted] = by_unit.try_emplace(unit);
    if (inserted) {
      order.push_back(unit);
    }
    if (!it->second.empty() && t < it->second.back()) {
      throw FormatError("event times must be non-decreasing", lineno);
    }
    it->second.push_back(t);
  }
  if (!window) {
    throw FormatError("missing '# window_end=<hours>' comment line");
  }
  if (!header) {
    throw FormatError("missing header 'unit_id,time_h'");
  }
  std::vector<EventTimeline> out;
  try {
    if (order.empty()) {
      out.emplace_back(*window);
    }
    for (const auto &unit : order) {
      out.emplace_back(*window, by_unit[unit],
                       unit.empty() ? std::nullopt
                                    : std::optional<std::string>(unit));
    }
  } catch (const std::invalid_argument &e) {
    throw FormatError(e.what());
  }
  return out;
}

} // namespace piu::io

#endif // PIU_IO_TIMELINE_CSV_HPP_
