#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "splitstep/experiment.hpp"

namespace splitstep {

inline constexpr const char* kCsvHeader =
    "n,t,l2,h1,kinetic_TK,energy_HK,h1_lower_bound,membership_defect";

/// Shortest round-trip text with 17 significant digits.
std::string format_real(double value);

std::string csv_string(const Trajectory& trajectory);

/// Writes csv_string; throws std::runtime_error carrying the OS message.
void emit_csv(const Trajectory& trajectory, const std::filesystem::path& path);
void emit_json(const nlohmann::json& document, const std::filesystem::path& path);
void emit_json(const ExperimentSummary& summary, const std::filesystem::path& path);

/// Writes text to path, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace splitstep
