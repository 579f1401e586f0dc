#pragma once

#include <cstdint>
#include <vector>

namespace uavnet::energy {

inline constexpr double kDefaultVoltage = 11.1;
inline constexpr double kDefaultChargeMah = 2200.0;

enum class DrainMode {
  // transmit power read as percentage points per second (reproduces the
  // published battery column)
  percent,
  // transmit power in watts drawn from the pack's stored joules
  joule,
};

struct DrainModel {
  DrainMode mode = DrainMode::percent;
  double percent_scale = 100.0;
};

// Which battery figure capacities are derated with.
enum class LevelBasis {
  exact,
  reported_percent,
};

class BatteryState {
 public:
  BatteryState() = default;
  explicit BatteryState(double initial_level, double voltage = kDefaultVoltage,
                        double charge_mah = kDefaultChargeMah);

  double voltage() const { return voltage_; }
  double charge_mah() const { return charge_mah_; }
  double initial_level() const { return initial_level_; }
  double level() const { return level_; }

  double pack_joules() const { return voltage_ * charge_mah_ * 3.6; }
  // energy at the start of the run (pack energy scaled by the initial level)
  double battery_max_joules() const { return pack_joules() * initial_level_; }
  double remaining_joules() const { return pack_joules() * level_; }

  // remaining / battery_max, as used to derate link capacity
  double derating_fraction(LevelBasis basis = LevelBasis::exact) const;

  int reported_percent() const;

 private:
  friend BatteryState drain(const BatteryState&, double, double, const DrainModel&);

  double voltage_ = kDefaultVoltage;
  double charge_mah_ = kDefaultChargeMah;
  double initial_level_ = 1.0;
  double level_ = 1.0;
};

double derate_capacity(double c_max_bps, double level);

double transmission_time(double data_bits, double capacity_bps);

BatteryState drain(const BatteryState& state, double duration_s, double tx_power_w,
                   const DrainModel& model = {});

// Floor to integer percent; a small epsilon absorbs binary round-off
// (0.31 * 100 must report 31, not 30).
int reported_percent(double level);

// Initial levels drawn uniformly from [lo, hi].
std::vector<double> sample_initial_levels(std::size_t count, std::uint64_t seed, double lo = 0.80,
                                          double hi = 1.00);

}  // namespace uavnet::energy
