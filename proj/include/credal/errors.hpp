#ifndef CREDAL_ERRORS_HPP
#define CREDAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace credal {

// Input fails structural or numeric validation (bad shapes, unreachable
// bounds, masses that do not sum to 1, malformed documents, ...).
class validation_error : public std::runtime_error {
public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Fusion has no posterior support: every admissible configuration assigns
// probability zero to the conditioning event.
class conflict_error : public std::runtime_error {
public:
  explicit conflict_error(const std::string& what) : std::runtime_error(what) {}
};

// A search-space guard would be exceeded; the message carries a size estimate.
class guard_error : public std::runtime_error {
public:
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace credal

#endif
