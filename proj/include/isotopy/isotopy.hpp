// Time-parameterized maps and the data of a countable move sequence.
//
// An Isotopy is a finite list of stages laid out on disjoint time windows
// [a_j, b_j) of [0,1]. Before its window a stage is the identity, after it
// the stage is frozen at its time-1 map. At t = 0 everything is identity.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isotopy/maps.hpp"

namespace isotopy {

/// One elementary time-dependent map s(tau), tau in [0,1], s(0) = id.
class Stage {
 public:
  enum class Kind { cone, unsquish, power1d };

  static Stage cone(const Box& region, Point3 p0, Point3 p1) {
    make_cone_map(region, p0, p1);  // validates
    Stage s;
    s.kind_ = Kind::cone;
    s.cone_ = {region, p0, p1};
    return s;
  }
  static Stage unsquish(const UnsquishParams& u) {
    u.validate();
    Stage s;
    s.kind_ = Kind::unsquish;
    s.unsquish_ = u;
    return s;
  }
  /// x -> x^(1 + tau (e - 1)) on the unit segment.
  static Stage power1d(double e) {
    Stage s;
    s.kind_ = Kind::power1d;
    s.exponent_ = e;
    return s;
  }

  Kind kind() const { return kind_; }

  LocalMap at(double tau) const {
    if (tau <= 0.0) return LocalMap();
    tau = std::min(tau, 1.0);
    switch (kind_) {
      case Kind::cone: {
        const Point3 a = reversed_ ? cone_.apex_target : cone_.apex_source;
        const Point3 b = reversed_ ? cone_.apex_source : cone_.apex_target;
        return make_cone_map(cone_.region, a, tau >= 1.0 ? b : lerp(a, b, tau));
      }
      case Kind::unsquish:
        if (!reversed_) return make_unsquish_at(unsquish_, tau);
        // undo the full push, then replay it up to 1 - tau
        return compose(make_unsquish_at(unsquish_, 1.0).inverse(),
                       make_unsquish_at(unsquish_, 1.0 - tau));
      case Kind::power1d:
        return make_power1d(reversed_ ? rev_power(tau) : 1.0 + tau * (exponent_ - 1.0));
    }
    return LocalMap();
  }

  /// The stage run backwards: r(tau) = s(1 - tau) o s(1)^{-1}.
  Stage reversed() const {
    Stage s = *this;
    s.reversed_ = !reversed_;
    return s;
  }

  Box support() const {
    switch (kind_) {
      case Kind::cone:
        return cone_.region;
      case Kind::unsquish:
        return unsquish_.outer;
      case Kind::power1d:
        return Box({0, 0, 0}, {1, 0, 0});
    }
    return Box();
  }

  const ConeParams& cone_params() const { return cone_; }
  const UnsquishParams& unsquish_params() const { return unsquish_; }
  bool is_reversed() const { return reversed_; }

 private:
  // x^(e(1-tau)) o x^(1/e) = x^((1 + (1-tau)(e-1)) / e)
  double rev_power(double tau) const { return (1.0 + (1.0 - tau) * (exponent_ - 1.0)) / exponent_; }

  Kind kind_ = Kind::cone;
  ConeParams cone_{};
  UnsquishParams unsquish_{};
  double exponent_ = 1.0;
  bool reversed_ = false;
};

class Isotopy {
 public:
  struct Window {
    Stage stage;
    double begin;
    double end;
  };

  Isotopy() = default;

  /// Stages run one after another on equal time windows.
  static Isotopy uniform(std::vector<Stage> stages) {
    Isotopy h;
    const double m = static_cast<double>(stages.size());
    for (std::size_t j = 0; j < stages.size(); ++j)
      h.windows_.push_back({std::move(stages[j]), j / m, (j + 1) / m});
    if (!h.windows_.empty()) h.windows_.back().end = 1.0;
    h.finish();
    return h;
  }

  /// Concatenates `parts` on uniform windows.
  static Isotopy chain(const std::vector<Isotopy>& parts) {
    std::vector<double> cuts;
    for (std::size_t j = 0; j <= parts.size(); ++j)
      cuts.push_back(parts.empty() ? 0.0 : double(j) / parts.size());
    return chain(parts, cuts);
  }

  /// Concatenates `parts`, squeezing part j into [cuts[j], cuts[j+1]).
  static Isotopy chain(const std::vector<Isotopy>& parts, const std::vector<double>& cuts) {
    if (cuts.size() != parts.size() + 1) throw std::invalid_argument("Isotopy::chain: cut count");
    Isotopy h;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      const double a = cuts[j];
      const double b = cuts[j + 1];
      if (!(a < b)) throw std::invalid_argument("Isotopy::chain: cuts must increase");
      for (const auto& w : parts[j].windows_)
        h.windows_.push_back({w.stage, a + (b - a) * w.begin, a + (b - a) * w.end});
    }
    h.finish();
    return h;
  }

  /// Declares a support box (must contain every stage support).
  Isotopy with_support(const Box& v) const {
    for (const auto& w : windows_)
      if (!v.contains(w.stage.support()))
        throw std::invalid_argument("Isotopy: declared support misses a stage");
    Isotopy h = *this;
    h.support_ = v;
    return h;
  }

  /// The isotopy run backwards; its time-1 map inverts this one's.
  Isotopy reversed() const {
    Isotopy h;
    for (auto it = windows_.rbegin(); it != windows_.rend(); ++it)
      h.windows_.push_back({it->stage.reversed(), 1.0 - it->end, 1.0 - it->begin});
    h.support_ = support_;
    h.finish();
    return h;
  }

  LocalMap at(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("Isotopy: t outside [0,1]");
    for (std::size_t j = 0; j < windows_.size(); ++j) {
      const auto& w = windows_[j];
      if (t >= w.end) continue;
      if (t <= w.begin) return j == 0 ? LocalMap() : prefix_[j - 1];
      const LocalMap base = j == 0 ? LocalMap() : prefix_[j - 1];
      return compose(base, w.stage.at((t - w.begin) / (w.end - w.begin)));
    }
    return time1();
  }

  Point3 eval(double t, Point3 p) const { return at(t).eval(p); }
  LocalMap time1() const { return prefix_.empty() ? LocalMap() : prefix_.back(); }

  std::optional<Box> support() const {
    if (support_) return support_;
    std::optional<Box> s;
    for (const auto& w : windows_) s = s ? s->hull(w.stage.support()) : w.stage.support();
    return s;
  }

  const std::vector<Window>& windows() const { return windows_; }
  std::size_t stage_count() const { return windows_.size(); }

 private:
  void finish() {
    prefix_.clear();
    LocalMap acc;
    for (const auto& w : windows_) {
      acc = compose(acc, w.stage.at(1.0));
      prefix_.push_back(acc);
    }
  }

  std::vector<Window> windows_;
  std::vector<LocalMap> prefix_;  // prefix_[j] = time-1 maps of stages 0..j
  std::optional<Box> support_;
};

/// Strictly increasing t_k in (0,1) with t_k -> 1; t_0 = 0.
class Schedule {
 public:
  /// t_k = 1 - 2^{-k}.
  Schedule() : t_([](std::size_t k) { return 1.0 - std::ldexp(1.0, -static_cast<int>(k)); }) {}
  explicit Schedule(std::function<double(std::size_t)> t) : t_(std::move(t)) {}

  double t(std::size_t k) const {
    if (k == 0) return 0.0;
    const double v = t_(k);
    if (!(v > 0.0 && v < 1.0)) throw std::domain_error("Schedule: t_k outside (0,1)");
    return v;
  }

  /// k >= 1 with t in [t_{k-1}, t_k); 0 when t == 1.
  std::size_t index(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("Schedule: t outside [0,1]");
    if (t == 1.0) return 0;
    double prev = 0.0;
    for (std::size_t k = 1; k < 100000; ++k) {
      const double cur = this->t(k);
      if (!(cur > prev)) throw std::domain_error("Schedule: not strictly increasing");
      if (t < cur) return k;
      prev = cur;
    }
    throw std::domain_error("Schedule: t too close to 1");
  }

 private:
  std::function<double(std::size_t)> t_;
};

struct Move {
  Isotopy H;
  Box V;
};

/// The sequence (H_k, V_k), k = 1, 2, ..., inside a compact container A.
/// Generated moves are memoized; copies share the cache.
class MoveSequence {
 public:
  using Generator = std::function<Move(std::size_t)>;

  MoveSequence(Generator gen, Box container, std::optional<std::size_t> length = std::nullopt,
               std::optional<double> decay_ratio = std::nullopt)
      : state_(std::make_shared<State>()), container_(container), length_(length),
        decay_(decay_ratio) {
    state_->gen = std::move(gen);
  }

  const Box& container() const { return container_; }
  std::optional<std::size_t> length() const { return length_; }
  std::optional<double> declared_decay_ratio() const { return decay_; }
  bool has(std::size_t k) const { return k >= 1 && (!length_ || k <= *length_); }

  /// k >= 1; throws std::out_of_range past a finite end.
  const Move& move(std::size_t k) const {
    if (!has(k)) throw std::out_of_range("MoveSequence: no move " + std::to_string(k));
    std::lock_guard<std::mutex> lock(state_->mu);
    auto& cache = state_->cache;
    while (cache.size() < k) cache.push_back(std::make_unique<Move>(state_->gen(cache.size() + 1)));
    return *cache[k - 1];
  }

  const Box& support(std::size_t k) const { return move(k).V; }
  LocalMap time1(std::size_t k) const { return move(k).H.time1(); }

 private:
  struct State {
    Generator gen;
    std::mutex mu;
    std::vector<std::unique_ptr<Move>> cache;
  };
  std::shared_ptr<State> state_;
  Box container_;
  std::optional<std::size_t> length_;
  std::optional<double> decay_;
};

}  // namespace isotopy
