#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace palrich {

// Thrown when a request exceeds an enumeration, DP, or memory budget.
// Distinct from std::invalid_argument so drivers can map it to its own exit code.
class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text contains a character outside the declared alphabet.
class invalid_symbol : public std::invalid_argument {
 public:
  invalid_symbol(std::size_t position, char ch)
      : std::invalid_argument("character '" + std::string(1, ch) +
                              "' at position " + std::to_string(position) +
                              " is not in the alphabet"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace palrich
