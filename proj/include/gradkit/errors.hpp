#ifndef GRADKIT_ERRORS_HPP
#define GRADKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gradkit {

/// A requested computation exceeds the configured size/time budget.
class CapacityError : public std::runtime_error {
public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical invariant that must hold by construction was violated.
class IntegrityError : public std::runtime_error {
public:
  explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem or serialization failure.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gradkit

#endif
