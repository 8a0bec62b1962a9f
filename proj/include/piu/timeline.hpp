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


#ifndef PIU_TIMELINE_HPP_
#define PIU_TIMELINE_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace piu {

/*
 * Event times on the observation window [0, window_end]. Events lie in the
 * half-open interval (0, window_end] and are sorted. Exact ties are
 * permitted: merged timelines can coincide, and detecting that is the
 * singularity check's job rather than the container's.
 */
class EventTimeline {
public:
  explicit EventTimeline(double window_end, std::vector<double> events = {},
                         std::optional<std::string> unit_id = std::nullopt)
      : window_end_(window_end), events_(std::move(events)),
        unit_id_(std::move(unit_id)) {
    if (!(std::isfinite(window_end_) && window_end_ > 0.0)) {
      throw std::invalid_argument("window_end must be finite and > 0");
    }
    for (std::size_t i = 0; i < events_.size(); ++i) {
      const double t = events_[i];
      if (!(std::isfinite(t) && t > 0.0 && t <= window_end_)) {
        throw std::invalid_argument("event time " + std::to_string(t) +
                                    " outside (0, window_end]");
      }
      if (i > 0 && t < events_[i - 1]) {
        throw std::invalid_argument("event times must be sorted");
      }
    }
  }

  double window_end() const { return window_end_; }
  const std::vector<double> &events() const { return events_; }
  const std::optional<std::string> &unit_id() const { return unit_id_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }

  // Gaps between successive events, the first measured from 0.
  std::vector<double> gaps() const {
    std::vector<double> out(events_.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < events_.size(); ++i) {
      out[i] = events_[i] - prev;
      prev = events_[i];
    }
    return out;
  }

  EventTimeline scaled(double c) const {
    std::vector<double> ev(events_);
    for (auto &t : ev) {
      t *= c;
    }
    return EventTimeline(window_end_ * c, std::move(ev), unit_id_);
  }

  friend bool operator==(const EventTimeline &, const EventTimeline &) = default;

private:
  double window_end_;
  std::vector<double> events_;
  std::optional<std::string> unit_id_;
};

} // namespace piu

#endif // PIU_TIMELINE_HPP_
