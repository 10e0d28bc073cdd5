#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "tricomi/config.hpp"
#include "tricomi/pdesim.hpp"

namespace tricomi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

/// Default output directory when --out is not given.
inline constexpr const char* kOutDirEnv = "TRICOMI_LAB_OUT";

std::filesystem::path default_out_dir();

/// args excludes the program name. Never throws; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// Builds a PdeConfig from [model], [grid], [run] sections, consuming the
/// keys it reads. Throws config::ConfigError naming the line and key.
pde::PdeConfig pde_config_from(config::File& file);

/// Reads <dir>/acceptance.csv and whatever experiment outputs are present,
/// writes a markdown table with one row per acceptance criterion. Returns
/// the markdown text.
std::string build_report(const std::filesystem::path& dir);

}  // namespace tricomi::cli
