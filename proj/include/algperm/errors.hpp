#pragma once

#include <stdexcept>
#include <string>

namespace algperm {

/// Bad arguments: degree or dimension mismatch, out-of-range parameters,
/// malformed input files.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured enumeration or size cap would be exceeded.
class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

/// An identity that must hold exactly was observed to fail.
class CheckFailure : public std::logic_error {
 public:
  explicit CheckFailure(const std::string& what) : std::logic_error(what) {}
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

inline void require_cap(long long value, long long cap, const std::string& what) {
  if (value > cap) {
    throw ResourceLimit(what + ": " + std::to_string(value) + " exceeds cap " +
                        std::to_string(cap));
  }
}

}  // namespace detail
}  // namespace algperm
