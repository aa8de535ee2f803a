#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace qcm {

// Simulation time as an exact count of microticks (1 tick = 10^6 microticks).
// Integer arithmetic keeps event ordering, comparisons, and trace rendering
// deterministic; fractional tick values from configuration files are rounded
// to the nearest microtick once, at parse time.
class SimTime {
 public:
  static constexpr std::int64_t kMicroticksPerTick = 1'000'000;

  constexpr SimTime() = default;

  static constexpr SimTime ticks(std::int64_t t) {
    return SimTime(t * kMicroticksPerTick);
  }
  static constexpr SimTime microticks(std::int64_t ut) { return SimTime(ut); }
  static SimTime from_double(double t);

  constexpr std::int64_t count_microticks() const { return microticks_; }
  double to_double() const;
  constexpr bool negative() const { return microticks_ < 0; }

  // Shortest decimal form, no trailing zeros: "0", "5", "2.5".
  std::string to_string() const;
  // Fixed one-decimal form used for the final clock line: "15.0".
  std::string to_string_fixed1() const;

  friend constexpr auto operator<=>(SimTime a, SimTime b) = default;

  friend constexpr SimTime operator+(SimTime a, SimTime b) {
    return SimTime(a.microticks_ + b.microticks_);
  }
  friend constexpr SimTime operator-(SimTime a, SimTime b) {
    return SimTime(a.microticks_ - b.microticks_);
  }
  SimTime& operator+=(SimTime o) {
    microticks_ += o.microticks_;
    return *this;
  }

 private:
  constexpr explicit SimTime(std::int64_t ut) : microticks_(ut) {}

  std::int64_t microticks_ = 0;
};

}  // namespace qcm
