#include "qcmflow/sim_time.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qcm {

SimTime SimTime::from_double(double t) {
  return SimTime::microticks(
      std::llround(t * static_cast<double>(kMicroticksPerTick)));
}

double SimTime::to_double() const {
  return static_cast<double>(microticks_) /
         static_cast<double>(kMicroticksPerTick);
}

std::string SimTime::to_string() const {
  std::int64_t ut = microticks_;
  std::string sign;
  if (ut < 0) {
    sign = "-";
    ut = -ut;
  }
  const std::int64_t whole = ut / kMicroticksPerTick;
  std::int64_t frac = ut % kMicroticksPerTick;
  if (frac == 0) {
    return sign + std::to_string(whole);
  }
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%06lld", static_cast<long long>(frac));
  std::string digits(buf);
  while (!digits.empty() && digits.back() == '0') {
    digits.pop_back();
  }
  return sign + std::to_string(whole) + "." + digits;
}

std::string SimTime::to_string_fixed1() const {
  std::int64_t ut = microticks_;
  std::string sign;
  if (ut < 0) {
    sign = "-";
    ut = -ut;
  }
  // Round to tenths of a tick, half away from zero.
  const std::int64_t tenths = (ut + kMicroticksPerTick / 20) /
                              (kMicroticksPerTick / 10);
  return sign + std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

}  // namespace qcm
