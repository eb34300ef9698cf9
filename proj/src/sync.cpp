#include "oscsync/sync.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "oscsync/errors.hpp"

namespace oscsync {

void AnalyzerConfig::validate() const {
  if (!(eta_threshold > 0.0 && eta_threshold <= 100.0))
    throw ConfigError("analyzer: eta_threshold must be in (0, 100]");
  if (m_max < 1) throw ConfigError("analyzer: m_max must be >= 1");
  if (coincidence_window <= 0.0 && !(window_fraction > 0.0))
    throw ConfigError("analyzer: window_fraction must be > 0 when no absolute window is set");
  if (min_epochs < 1) throw ConfigError("analyzer: min_epochs must be >= 1");
}

double AnalyzerConfig::window_for(const SpikeTrain& a, const SpikeTrain& b) const {
  if (coincidence_window > 0.0) return coincidence_window;
  const double isi_a = (a.back() - a.front()) / static_cast<double>(a.size() - 1);
  const double isi_b = (b.back() - b.front()) / static_cast<double>(b.size() - 1);
  return window_fraction * std::min(isi_a, isi_b);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Synchronized: return "SYNCHRONIZED";
    case Verdict::Desynchronized: return "DESYNCHRONIZED";
    default: return "INSUFFICIENT_DATA";
  }
}

std::vector<Epoch> detect_epochs(const SpikeTrain& a, const SpikeTrain& b, double eps) {
  std::vector<std::pair<std::size_t, std::size_t>> matches;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::abs(a[i] - b[j]) <= eps) {
      matches.emplace_back(i, j);
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }

  std::vector<Epoch> epochs;
  if (matches.size() < 2) return epochs;
  epochs.reserve(matches.size() - 1);
  for (std::size_t k = 1; k < matches.size(); ++k) {
    Epoch e;
    e.start = a[matches[k - 1].first];
    e.m1 = static_cast<int>(matches[k].first - matches[k - 1].first);
    e.m2 = static_cast<int>(matches[k].second - matches[k - 1].second);
    epochs.push_back(e);
  }
  return epochs;
}

namespace {

// Mode of a marginal epoch-count distribution; ties break toward smaller
// counts (prefer the lower synchronization order).
std::pair<int, int> marginal_mode(const std::map<int, int>& hist) {
  int mode = 0, best = -1;
  for (const auto& [m, count] : hist) {
    if (count > best) {
      best = count;
      mode = m;
    }
  }
  return {mode, best};
}

}  // namespace

SyncEstimate estimate_sync(const SpikeTrain& a, const SpikeTrain& b, const AnalyzerConfig& cfg) {
  cfg.validate();
  SyncEstimate est;
  if (a.size() < 2 || b.size() < 2) return est;  // InsufficientData

  est.window = cfg.window_for(a, b);
  const std::vector<Epoch> epochs = detect_epochs(a, b, est.window);
  est.epoch_count = static_cast<int>(epochs.size());

  std::map<int, int> h1, h2;
  for (const Epoch& e : epochs) {
    ++est.epoch_histogram[{e.m1, e.m2}];
    ++h1[e.m1];
    ++h2[e.m2];
  }
  if (est.epoch_count < cfg.min_epochs) return est;  // InsufficientData

  const auto [m1, n1] = marginal_mode(h1);
  const auto [m2, n2] = marginal_mode(h2);
  est.m1 = m1;
  est.m2 = m2;
  est.eta = 100.0 * static_cast<double>(std::min(n1, n2)) / static_cast<double>(est.epoch_count);
  est.shr = reduce_fraction(m1, m2);

  const double ratio = mean_frequency(a) / mean_frequency(b);
  const double locked = static_cast<double>(m1) / static_cast<double>(m2);
  est.freq_ratio_check = std::abs(ratio - locked) / locked;

  const bool sync = est.eta >= cfg.eta_threshold && m1 <= cfg.m_max && m2 <= cfg.m_max;
  est.verdict = sync ? Verdict::Synchronized : Verdict::Desynchronized;
  return est;
}

SpikeTrain extract_spikes(std::span<const double> time, std::span<const double> value,
                          double threshold_sigma, double refractory) {
  if (time.size() != value.size()) throw ConfigError("extract_spikes: axis length mismatch");
  SpikeTrain train;
  if (value.size() < 2) return train;

  const double n = static_cast<double>(value.size());
  const double mean = std::accumulate(value.begin(), value.end(), 0.0) / n;
  double var = 0.0;
  for (double v : value) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / n);
  if (sd == 0.0) return train;  // flat trace: no spikes

  const double level = mean + threshold_sigma * sd;
  double last = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < value.size(); ++k) {
    if (value[k - 1] <= level && value[k] > level && time[k] - last > refractory) {
      train.push_back(time[k]);
      last = time[k];
    }
  }
  return train;
}

double mean_frequency(const SpikeTrain& train) {
  if (train.size() < 2)
    throw InsufficientData("mean_frequency: needs at least two events");
  return static_cast<double>(train.size() - 1) / (train.back() - train.front());
}

Capacity capacity(int m_max) {
  if (m_max < 1) throw ConfigError("capacity: m_max must be >= 1");
  // totient sieve; coprime pairs in [1,m]^2 = 2*sum(phi(k)) - 1
  std::vector<int> phi(static_cast<std::size_t>(m_max) + 1);
  std::iota(phi.begin(), phi.end(), 0);
  for (int p = 2; p <= m_max; ++p) {
    if (phi[p] == p) {  // p prime
      for (int k = p; k <= m_max; k += p) phi[k] -= phi[k] / p;
    }
  }
  std::int64_t total = 0;
  for (int k = 1; k <= m_max; ++k) total += phi[k];
  Capacity c;
  c.n_s = 2 * total - 1;
  c.w_c = c.n_s + 1;
  return c;
}

}  // namespace oscsync
