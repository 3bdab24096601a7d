#ifndef RELHYP_ERRORS_HPP
#define RELHYP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace relhyp {

// Malformed or inconsistent input: bad letters, unknown vertices, invalid
// configuration values. Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A path whose cone vertices sit at an endpoint, so entering/exiting
// vertices are undefined.
class MalformedPathError : public InputError {
 public:
  explicit MalformedPathError(const std::string& what) : InputError(what) {}
};

// A configured cap (vertex count, enumeration budget, circuit length) was
// exceeded. Maps to CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, bool partial = false)
      : std::runtime_error(what), partial_(partial) {}

  bool partial() const noexcept { return partial_; }

 private:
  bool partial_;
};

}  // namespace relhyp

#endif  // RELHYP_ERRORS_HPP
