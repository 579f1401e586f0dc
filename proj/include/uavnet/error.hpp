#pragma once

#include <stdexcept>
#include <string>

namespace uavnet {

enum class Errc {
  invalid_polygon,
  invalid_parameter,
  format_error,
  empty_area,
  empty_fleet,
  below_reference_distance,
  degenerate_network,
  invalid_state,
  dead_link,
  no_route,
  capacity_exhausted,
  no_sources,
  scenario_error,
};

const char* to_string(Errc code);

// Every module reports failures through this type; the code identifies the
// violated precondition and what() carries a one-line diagnostic.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class CapacityExhausted : public Error {
 public:
  CapacityExhausted(double shortfall_bits, const std::string& what)
      : Error(Errc::capacity_exhausted, what), shortfall_(shortfall_bits) {}

  double shortfall_bits() const noexcept { return shortfall_; }

 private:
  double shortfall_;
};

}  // namespace uavnet
