#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oscsync/sync.hpp"

namespace oscsync {

// Inclusive arithmetic grid over one control current.
struct CurrentRange {
  double min = 0.0;   // A; 0 = take the switch's i_th
  double max = 0.0;   // A; 0 = take the switch's i_h
  double step = 10e-6;

  std::vector<double> values() const;
  void validate() const;
};

struct SweepConfig {
  NetworkConfig base;        // a pair; currents are overwritten per cell
  CurrentRange i1, i2;
  AnalyzerConfig analyzer;
  std::uint64_t base_seed = 1;
  int threads = 0;           // 0 = hardware concurrency

  // ranges with defaults resolved against the base oscillators
  CurrentRange resolved_i1() const;
  CurrentRange resolved_i2() const;
  void validate() const;
};

struct CellResult {
  Verdict verdict = Verdict::InsufficientData;
  Fraction shr{0, 0};
  int m1 = 0, m2 = 0;
  double eta = 0.0;
  bool error = false;
  std::string error_message;
};

struct SweepMap {
  std::vector<double> i1;  // axis values, A
  std::vector<double> i2;
  std::vector<CellResult> cells;  // i1-major: cells[a * i2.size() + b]

  const CellResult& at(std::size_t a, std::size_t b) const { return cells[a * i2.size() + b]; }
  CellResult& at(std::size_t a, std::size_t b) { return cells[a * i2.size() + b]; }
};

// Simulate + estimate every grid cell with seed mix_seed(base_seed, a, b);
// cell errors are recorded in place, never retried, never fatal.
SweepMap sweep2d(const SweepConfig& cfg);

struct SweepSummary {
  std::int64_t n_s = 0;                                  // distinct synchronized SHR
  std::vector<std::pair<Fraction, double>> psi_per_shr;  // percent, descending
  double psi_total = 0.0;
  double desync_share = 0.0;  // desynchronized + insufficient-data cells
  double error_share = 0.0;
  std::int64_t total_cells = 0;
};

SweepSummary summarize(const SweepMap& map);

struct StaircaseRow {
  double i1 = 0.0;
  Fraction shr{0, 0};
  double eta = 0.0;
  Verdict verdict = Verdict::InsufficientData;
};

// Fixed-i2 cross-section, ordered by i1. Off-grid i2 snaps to the nearest
// axis value; `snapped` reports the value actually used.
std::vector<StaircaseRow> staircase_cut(const SweepMap& map, double i2,
                                        double* snapped = nullptr);

enum class ScanParameter : std::uint8_t { Delta, Noise };

struct ScanPoint {
  double value = 0.0;
  std::int64_t n_s = 0;
  double psi = 0.0;
};

// Substitute each value into the pair config (Delta applied symmetrically),
// then sweep2d + summarize.
std::vector<ScanPoint> scan_parameter(const SweepConfig& base, ScanParameter which,
                                      std::span<const double> values);

}  // namespace oscsync
