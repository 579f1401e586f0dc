#include "uavnet/energy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "uavnet/error.hpp"

namespace uavnet::energy {

BatteryState::BatteryState(double initial_level, double voltage, double charge_mah)
    : voltage_(voltage), charge_mah_(charge_mah), initial_level_(initial_level),
      level_(initial_level) {
  if (!(initial_level > 0.0 && initial_level <= 1.0))
    throw Error(Errc::invalid_state,
                "initial battery level must be in (0, 1], got " + std::to_string(initial_level));
  if (!(voltage > 0.0) || !(charge_mah > 0.0))
    throw Error(Errc::invalid_parameter, "battery voltage and charge must be positive");
}

double BatteryState::derating_fraction(LevelBasis basis) const {
  const double level = basis == LevelBasis::exact ? level_ : reported_percent() / 100.0;
  return std::min(1.0, level / initial_level_);
}

int BatteryState::reported_percent() const { return energy::reported_percent(level_); }

int reported_percent(double level) {
  return static_cast<int>(std::floor(level * 100.0 + 1e-9));
}

double derate_capacity(double c_max_bps, double level) {
  if (!(level >= 0.0 && level <= 1.0))
    throw Error(Errc::invalid_state, "battery level outside [0, 1]: " + std::to_string(level));
  if (!(c_max_bps >= 0.0)) throw Error(Errc::invalid_parameter, "negative capacity");
  return c_max_bps * level;
}

double transmission_time(double data_bits, double capacity_bps) {
  if (!(data_bits >= 0.0)) throw Error(Errc::invalid_parameter, "negative data size");
  if (data_bits == 0.0) return 0.0;
  if (!(capacity_bps > 0.0))
    throw Error(Errc::dead_link, "cannot send " + std::to_string(data_bits) +
                                     " bits over a zero-capacity link");
  return data_bits / capacity_bps;
}

BatteryState drain(const BatteryState& state, double duration_s, double tx_power_w,
                   const DrainModel& model) {
  if (!(duration_s >= 0.0))
    throw Error(Errc::invalid_parameter, "negative transmission duration");
  const double scale =
      model.mode == DrainMode::percent ? model.percent_scale : state.pack_joules();
  BatteryState out = state;
  out.level_ = std::max(0.0, state.level_ - tx_power_w * duration_s / scale);
  return out;
}

std::vector<double> sample_initial_levels(std::size_t count, std::uint64_t seed, double lo,
                                          double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(count);
  for (auto& v : out) v = dist(rng);
  return out;
}

}  // namespace uavnet::energy
