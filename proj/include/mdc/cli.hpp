#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "mdc/patterns.hpp"

namespace mdc {

/// A parsed instance file:
///   {"num_paths": 3, "capacity": 1.0, "blockage_probs": [0.1, 0.2, 0.3],
///    "group1": ["100", "110"], "group2": ["011", "101"]}
struct InstanceConfig {
  NetworkConfig network;
  Grouping grouping;
};

// Throws Error(Parse) with line/column for malformed JSON, and with the
// offending entry for bad pattern strings.
InstanceConfig parse_instance_config(std::string_view text);
InstanceConfig load_instance_config(const std::string& path);

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kConfig = 2;
inline constexpr int kUnachievable = 3;
inline constexpr int kBadFlag = 4;
inline constexpr int kDegenerate = 5;
}  // namespace exit_code

// Entry point of the `mdc` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace mdc
