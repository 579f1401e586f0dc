#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace uavnet::channel {

inline constexpr double kSpeedOfLight = 2.998e8;

enum class FadingMode { deterministic, rayleigh };

struct ChannelParams {
  double tx_power_w = std::pow(10.0, -0.4);
  double gain_tx = 10.0;
  double gain_rx = 10.0;
  double carrier_hz = 2.4e9;
  // also used as the uplink exponent alpha
  double path_loss_exponent = 2.0;
  // tau, linear prefactor on the uplink loss factor
  double channel_coefficient = 1.0;
  double reference_distance_m = 1.0;
  double noise_w = 1.4332e-15;
  double bandwidth_hz = 360e3;
  FadingMode fading = FadingMode::deterministic;
  std::uint64_t fading_seed = 0;

  double wavelength() const { return kSpeedOfLight / carrier_hz; }
  void validate() const;
};

struct LinkBudget {
  double distance_m = 0.0;
  double path_loss_db = 0.0;
  double zeta = 1.0;
  double fading_gain = 1.0;
  double snr = 0.0;
  double capacity_bps = 0.0;
};

// Friis free-space loss at the reference distance, gains included.
double reference_loss_db(const ChannelParams& p);

// PL(d0) + 10 n log10(d / d0)
double path_loss_db(const ChannelParams& p, double d);

// Linear loss factor tau * 10^(PL/10); its inverse is the path gain.
double uplink_zeta(const ChannelParams& p, double d);

double snr(const ChannelParams& p, double d, double fading_gain = 1.0);

// B log2(1 + snr)
double capacity(const ChannelParams& p, double snr);

LinkBudget link_budget(const ChannelParams& p, double d, double fading_gain = 1.0);

// Unit-mean exponential power gain (squared Rayleigh envelope).
class RayleighFading {
 public:
  explicit RayleighFading(std::uint64_t seed) : rng_(seed) {}
  double draw();

 private:
  std::mt19937_64 rng_;
  std::exponential_distribution<double> dist_{1.0};
};

}  // namespace uavnet::channel
