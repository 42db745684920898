#pragma once

#include <stdexcept>
#include <string>

namespace rgamss {

// Raised for arguments outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace rgamss
