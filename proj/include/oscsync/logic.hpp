#pragma once

#include <cstdint>
#include <span>

#include "oscsync/sync.hpp"

namespace oscsync {

enum class LogicBit : std::uint8_t { Zero = 0, One = 1 };
enum class LogicRule : std::uint8_t { Sync, Decimal, Threshold };

const char* to_string(LogicRule r);

struct LogicVerdict {
  LogicBit bit = LogicBit::Zero;
  LogicRule rule = LogicRule::Sync;
  Fraction basis_shr{0, 0};
  double basis_eta = 0.0;
};

// ONE iff the signal is synchronized with the reference oscillator
// (eta >= threshold and a synchronized verdict). Throws InsufficientData
// when no logic level can be assigned.
LogicVerdict logic_rule_sync(const SyncEstimate& est, double eta_threshold = 90.0);

// ONE iff the reduced SHR has a finite decimal expansion (denominator
// factors only 2 and 5).
LogicVerdict logic_rule_decimal(Fraction shr);

// ONE iff SHR >= 1.
LogicVerdict logic_rule_threshold(Fraction shr);

// The analog "multiplication" primitive: reduced product of SHR values.
Fraction compose_shr(std::span<const Fraction> fractions);

}  // namespace oscsync
