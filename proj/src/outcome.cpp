#include "galois/outcome.hpp"

#include "galois/errors.hpp"

namespace galois {

std::string outcome_symbol(Outcome outcome) {
  switch (outcome) {
    case Outcome::Home:
      return "1";
    case Outcome::Draw:
      return "X";
    case Outcome::Away:
      return "2";
  }
  return "?";
}

Outcome parse_outcome(const std::string& symbol) {
  if (symbol == "1") return Outcome::Home;
  if (symbol == "X" || symbol == "x") return Outcome::Draw;
  if (symbol == "2") return Outcome::Away;
  throw ConfigError("unknown outcome '" + symbol + "' (expected 1, X or 2)");
}

}  // namespace galois
