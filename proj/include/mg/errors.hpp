#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mg {

// Malformed user input: bad word/presentation/machine text, letters beyond the
// arity, arity mismatches between descriptions.
class InputError : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit InputError(const std::string& what, std::size_t position = npos)
      : std::runtime_error(position == npos ? what
                                            : what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Misuse of the API, e.g. stepping a computation that already terminated.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mg
