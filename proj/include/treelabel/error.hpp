#pragma once

#include <stdexcept>
#include <string>

namespace treelabel {

/// Malformed tree text or labelling JSON. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

private:
  int line_;
};

/// A construction was asked to run outside the hypotheses it is proven for.
class NotApplicable : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace treelabel
