#pragma once

#include <stdexcept>

namespace nsleak {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Unknown, duplicate, or overlapping variable names in a selector.
class SelectorError : public Error {
public:
  using Error::Error;
};

/// Conditioning value is not realizable (outside the conditioning marginal).
class EmptyConditionError : public Error {
public:
  using Error::Error;
};

/// Blocks do not form a partition of the required domain.
class PartitionError : public Error {
public:
  using Error::Error;
};

/// Instance too large for exhaustive enumeration.
class OracleCapError : public Error {
public:
  using Error::Error;
};

/// Numeric argument outside the operation's domain.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Unreadable, empty, or malformed input data.
class DataError : public Error {
public:
  using Error::Error;
};

}  // namespace nsleak
