#ifndef OIEROBUST_ERROR_HPP
#define OIEROBUST_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oierobust {

// Bad argument to a library call (out-of-range weight, empty input, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data that is well-formed but violates a contract (duplicate ids,
// missing gold tuples, unknown sentence ids, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace oierobust

#endif  // OIEROBUST_ERROR_HPP
