#pragma once

#include "run_config.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace mmrclust::cli {

/// Files written by a command, relative to its output directory.
struct RunOutputs {
    std::vector<std::string> files;
};

RunOutputs run_cluster(const ClusterConfig& config, const std::filesystem::path& out_dir, std::ostream& log);
RunOutputs run_pair(const PairConfig& config, const std::filesystem::path& out_dir, std::ostream& log);
RunOutputs run_predict(const PredictConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

/// Re-executes the command recorded in a run manifest into out_dir. The
/// recorded input hash must match the current input file.
RunOutputs run_manifest(const std::filesystem::path& manifest, const std::filesystem::path& out_dir,
                        std::ostream& log);

/// ISO-8601 UTC time; honours SOURCE_DATE_EPOCH when set.
std::string timestamp_now();

}  // namespace mmrclust::cli
