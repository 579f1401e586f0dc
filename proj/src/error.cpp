#include "uavnet/error.hpp"

namespace uavnet {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_polygon: return "invalid polygon";
    case Errc::invalid_parameter: return "invalid parameter";
    case Errc::format_error: return "format error";
    case Errc::empty_area: return "empty area";
    case Errc::empty_fleet: return "empty fleet";
    case Errc::below_reference_distance: return "below reference distance";
    case Errc::degenerate_network: return "degenerate network";
    case Errc::invalid_state: return "invalid state";
    case Errc::dead_link: return "dead link";
    case Errc::no_route: return "no route";
    case Errc::capacity_exhausted: return "capacity exhausted";
    case Errc::no_sources: return "no sources";
    case Errc::scenario_error: return "scenario error";
  }
  return "unknown error";
}

}  // namespace uavnet
