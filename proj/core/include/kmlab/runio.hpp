// Byte-stable file output: 17-significant-digit number formatting, atomic
// temp-and-rename writes, content hashing, and the CSV/JSON emitters used by
// the run orchestrator.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "kmlab/dynamics.hpp"
#include "kmlab/estimates.hpp"

namespace kmlab {

// Round-trip-safe decimal representation (17 significant digits).
std::string format_double(double value);

// FNV-1a 64-bit over the bytes, rendered as 16 hex digits.
std::string content_hash(const std::string& bytes);

// Writes to a temporary file in the target directory, then renames.
void atomic_write_file(const std::filesystem::path& path, const std::string& bytes);

// Trajectory summary CSV: time, l2_u, l2_v, hs_u, hs_v, wl4_u, wl4_v, mass,
// mass_residual (residual empty at the boundary slices).
std::string trajectory_csv(const Trajectory& traj);

// One CSV per slice with columns x, u, v.
std::string slice_csv(const KmState& state);

// Array-of-objects JSON for estimate reports.
std::string reports_json(const std::vector<EstimateReport>& reports);

}  // namespace kmlab
