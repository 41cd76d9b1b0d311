#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vanet/clustering.hpp"
#include "vanet/connectivity.hpp"
#include "vanet/experiments.hpp"

namespace vanet {

/// Provenance record written next to every command's outputs so a run can
/// be reproduced from the record alone.
struct RunManifest {
    std::string command;
    std::string config_path; // empty when no config file was involved
    std::uint64_t master_seed = 0;
    std::string tool_version;
    std::vector<std::string> output_paths;
    // Resolved parameter values (flag or default) the run actually used,
    // rendered as key/value strings in a fixed order.
    std::vector<std::pair<std::string, std::string>> parameters;
};

/// Current tool version, recorded in every manifest.
inline constexpr const char* kToolVersion = "1.0.0";

std::string to_json_text(const ClusterStructure& cs);
std::string to_json_text(const ConnectivityReport& report);
std::string to_json_text(const std::vector<SweepRow>& rows);
std::string to_json_text(const RunManifest& manifest);

/// Writes text to path, throwing IoError on failure.
void write_text_file(const std::string& path, const std::string& text);

} // namespace vanet
