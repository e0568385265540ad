#pragma once

#include <stdexcept>
#include <string>

namespace ouembed {

// Argument outside the mathematical domain of an evaluator.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Input violates a documented precondition (e.g. negative datum for S).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A norm or gauge has no finite value inside the search bracket.
struct OverflowSignal : std::overflow_error {
  using std::overflow_error::overflow_error;
};

// Request rejected because no formula covers it (inadmissible parameters,
// missing associate, uncovered table case).
struct Rejected : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::invalid_argument {
  ParseError(const std::string& text, std::size_t pos, const std::string& expected)
      : std::invalid_argument("parse error at position " + std::to_string(pos) + " in '" + text +
                              "': expected " + expected),
        position(pos),
        expected_tokens(expected) {}
  std::size_t position;
  std::string expected_tokens;
};

}  // namespace ouembed
