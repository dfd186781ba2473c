#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pocmob/topology.hpp"

namespace pocmob {

/// Error with a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

struct ParsedMechanism {
  MechanismTopology mechanism;
  std::vector<std::string> warnings;
};

/// Reads a mechanism description:
///
///     # comment (only as the first non-blank character of a line)
///     mechanism tricept
///     leg 1: R _|_ R - P
///     relations:
///       1 3 _|_
///     leg 2:
///       8 2 2
///       2 8 2
///       2 2 9
///     platform fixed:
///       8 0
///       0 8
///     platform moving:
///       ...
///
/// Relation tokens: `||` parallel, `_|_` perpendicular, `/` coaxial,
/// `*` common point, `#` coplanar, `-` arbitrary. Integer codes 0-5 are
/// accepted wherever a token is.
ParsedMechanism parse_mechanism(std::string_view text);

/// Canonical text in matrix form; parse_mechanism(format_mechanism(m)) == m.
std::string format_mechanism(const MechanismTopology& mech);

/// ASCII token of a relation code.
std::string_view relation_token(RelationCode code);

}  // namespace pocmob
