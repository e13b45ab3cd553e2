#pragma once

#include <string>

namespace galois {

/// Home win, draw, away win.
enum class Outcome { Home, Draw, Away };

/// "1", "X", "2"; these are also the outcome attribute names in every context.
std::string outcome_symbol(Outcome outcome);
/// Throws ConfigError.
Outcome parse_outcome(const std::string& symbol);

inline constexpr Outcome kOutcomes[] = {Outcome::Home, Outcome::Draw, Outcome::Away};

}  // namespace galois
