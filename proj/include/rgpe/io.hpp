#pragma once
#include <filesystem>
#include <string>
#include <vector>
#include "rgpe/field.hpp"
#include "rgpe/propagator.hpp"

namespace rgpe {

// Snapshot file: 16-byte header (magic "RGPE", u32 n, f64 l, little-endian)
// followed by n² complex samples as interleaved little-endian float64 (re, im)
// in row-major order (x₂ varies fastest).
void write_snapshot(const std::filesystem::path& path, const WaveField& u);
WaveField read_snapshot(const std::filesystem::path& path);

// Ledger CSV, one row per recorded time, headers exactly:
// t,mass,e0,lz,j_sq,h_sq,hist,pc_h_residual,pc_j_residual
// Floating point with 17 significant digits.
void write_ledger_csv(const std::filesystem::path& path, const ConservationLedger& ledger);

// Trajectory directory: manifest.json (params, config, times, …) + ledger.csv
// + one snapshot file per stored time. extra_manifest is merged into the
// manifest (config echo, content hash, wall time, warnings).
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                      const std::string& extra_manifest_json = "{}");

// One row of a verification report.
struct CheckResult {
    std::string suite;
    std::string check;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;   // optional context (e.g. "no contraction")
};

// JSON array of {suite, check, value, tolerance, pass} objects.
void write_report_json(const std::filesystem::path& path,
                       const std::vector<CheckResult>& checks);

// Human-readable table of the same rows.
std::string render_report_table(const std::vector<CheckResult>& checks);

// Deterministic content hash (FNV-1a 64, hex) used for reproducibility
// bookkeeping in manifests; not cryptographic.
std::string content_hash(const std::string& bytes);

} // namespace rgpe
