#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace uavnet::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kScenario = 2,
  kCapacityExhausted = 3,
};

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes to a sibling temp file and renames it over the target.
void write_atomically(const std::filesystem::path& target, const std::string& content);

}  // namespace uavnet::cli
