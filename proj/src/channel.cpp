#include "uavnet/channel.hpp"

#include <numbers>
#include <string>

#include "uavnet/error.hpp"

namespace uavnet::channel {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw Error(Errc::invalid_parameter, std::string(name) + " must be positive and finite");
}

void require_reference(const ChannelParams& p, double d) {
  if (!(d >= p.reference_distance_m))
    throw Error(Errc::below_reference_distance,
                "distance " + std::to_string(d) + " m is below the reference distance " +
                    std::to_string(p.reference_distance_m) + " m");
}

}  // namespace

void ChannelParams::validate() const {
  require_positive(tx_power_w, "transmit power");
  require_positive(gain_tx, "transmit gain");
  require_positive(gain_rx, "receive gain");
  require_positive(carrier_hz, "carrier frequency");
  require_positive(path_loss_exponent, "path loss exponent");
  require_positive(channel_coefficient, "channel coefficient");
  require_positive(reference_distance_m, "reference distance");
  require_positive(noise_w, "noise power");
  require_positive(bandwidth_hz, "bandwidth");
}

double reference_loss_db(const ChannelParams& p) {
  const double lambda = p.wavelength();
  const double four_pi_d0 = 4.0 * std::numbers::pi * p.reference_distance_m;
  return -10.0 * std::log10(p.gain_tx * p.gain_rx * lambda * lambda / (four_pi_d0 * four_pi_d0));
}

double path_loss_db(const ChannelParams& p, double d) {
  require_reference(p, d);
  return reference_loss_db(p) + 10.0 * p.path_loss_exponent * std::log10(d / p.reference_distance_m);
}

double uplink_zeta(const ChannelParams& p, double d) {
  return p.channel_coefficient * std::pow(10.0, path_loss_db(p, d) / 10.0);
}

double snr(const ChannelParams& p, double d, double fading_gain) {
  if (!(fading_gain > 0.0)) throw Error(Errc::invalid_parameter, "fading gain must be positive");
  return p.tx_power_w / uplink_zeta(p, d) * fading_gain / p.noise_w;
}

double capacity(const ChannelParams& p, double snr) {
  if (!(snr >= 0.0)) throw Error(Errc::invalid_parameter, "negative SNR");
  return p.bandwidth_hz * std::log2(1.0 + snr);
}

LinkBudget link_budget(const ChannelParams& p, double d, double fading_gain) {
  LinkBudget b;
  b.distance_m = d;
  b.path_loss_db = path_loss_db(p, d);
  b.zeta = p.channel_coefficient * std::pow(10.0, b.path_loss_db / 10.0);
  b.fading_gain = fading_gain;
  b.snr = snr(p, d, fading_gain);
  b.capacity_bps = capacity(p, b.snr);
  return b;
}

double RayleighFading::draw() {
  double g = 0.0;
  while (!(g > 0.0)) g = dist_(rng_);
  return g;
}

}  // namespace uavnet::channel
