#ifndef PITMAN_ERROR_HPP
#define PITMAN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pitman {

// Invalid parameters, malformed JSON/CSV input, unknown law kinds.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numeric failures: divergent moments, degenerate Beta/Dirichlet
// parameters, evaluating a log-likelihood outside its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DivergentMomentError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Stick-breaking did not reach its truncation level within the cap.
class IterationCapError : public DomainError {
 public:
  using DomainError::DomainError;
};

class InsufficientDrawsError : public DomainError {
 public:
  using DomainError::DomainError;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace pitman

#endif  // PITMAN_ERROR_HPP
