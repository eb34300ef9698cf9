#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "oscsync/fraction.hpp"
#include "oscsync/model.hpp"

namespace oscsync {

// Settings of the phase-locking estimator.
struct AnalyzerConfig {
  double eta_threshold = 90.0;    // percent
  int m_max = 20;                 // locks above this order count as desynchronized
  double coincidence_window = 0.0;  // s; <= 0 selects the relative rule below
  double window_fraction = 0.1;   // window = fraction * min mean inter-spike interval
  int min_epochs = 20;

  void validate() const;
  // the window actually applied to a given pair of trains
  double window_for(const SpikeTrain& a, const SpikeTrain& b) const;
};

enum class Verdict : std::uint8_t { Synchronized, Desynchronized, InsufficientData };

const char* to_string(Verdict v);

// One synchronization epoch: the stretch between two consecutive
// coincident spike pairs, holding m1 periods of train a and m2 of b.
struct Epoch {
  double start = 0.0;  // time of the opening coincidence (train-a member)
  int m1 = 0;
  int m2 = 0;
};

// Greedy one-to-one matching of near-coincident spikes (|a_i - b_j| <= eps,
// earlier pairs win), then period counts between consecutive matches.
std::vector<Epoch> detect_epochs(const SpikeTrain& a, const SpikeTrain& b, double eps);

struct SyncEstimate {
  Verdict verdict = Verdict::InsufficientData;
  Fraction shr{0, 0};        // reduced M1/M2; undefined on insufficient data
  int m1 = 0, m2 = 0;        // marginal epoch-count modes (raw)
  double eta = 0.0;          // percent
  std::map<std::pair<int, int>, int> epoch_histogram;
  int epoch_count = 0;
  double freq_ratio_check = 0.0;  // |F1/F2 - M1/M2| / (M1/M2)
  double window = 0.0;            // coincidence window used, s
};

SyncEstimate estimate_sync(const SpikeTrain& a, const SpikeTrain& b, const AnalyzerConfig& cfg);

// Rising crossings of mean + threshold_sigma * std, with re-triggers inside
// `refractory` suppressed. Flat traces yield an empty train.
SpikeTrain extract_spikes(std::span<const double> time, std::span<const double> value,
                          double threshold_sigma = 3.0, double refractory = 0.0);

// Reciprocal of the mean inter-spike interval. Throws InsufficientData
// for trains with fewer than two events.
double mean_frequency(const SpikeTrain& train);

// Classification capacity of the M-limited fraction grid: n_s coprime
// pairs in [1, m_max]^2 plus the no-sync state.
struct Capacity {
  std::int64_t n_s = 0;
  std::int64_t w_c = 0;
};

Capacity capacity(int m_max);

}  // namespace oscsync
