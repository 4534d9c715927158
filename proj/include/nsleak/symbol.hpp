#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace nsleak {

/// One realization of an uncertain variable.
///
/// Symbols are opaque comparable tokens; equality and total order are the
/// only structure the measures rely on. Numeric symbols compare by value
/// (an integer equals the same-valued real), text symbols compare
/// lexicographically, and every number orders before every text token.
class Symbol {
public:
  Symbol() : value_(std::int64_t{0}) {}
  Symbol(std::int64_t v) : value_(v) {}
  Symbol(int v) : value_(static_cast<std::int64_t>(v)) {}
  Symbol(double v) : value_(v) {}
  Symbol(std::string v) : value_(std::move(v)) {}
  Symbol(const char* v) : value_(std::string(v)) {}

  bool is_number() const { return value_.index() != 2; }
  bool is_text() const { return value_.index() == 2; }

  /// Numeric value; throws DomainError for text symbols.
  double number() const;

  /// Text value; throws DomainError for numeric symbols.
  const std::string& text() const;

  /// Stable rendering: integers without a point, reals with the shortest
  /// round-trip form, text verbatim.
  std::string str() const;

  friend bool operator==(const Symbol& a, const Symbol& b);
  friend bool operator<(const Symbol& a, const Symbol& b);
  friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }
  friend bool operator>(const Symbol& a, const Symbol& b) { return b < a; }
  friend bool operator<=(const Symbol& a, const Symbol& b) { return !(b < a); }
  friend bool operator>=(const Symbol& a, const Symbol& b) { return !(a < b); }

private:
  std::variant<std::int64_t, double, std::string> value_;
};

/// One realization of a tuple of variables; compared lexicographically.
using Tuple = std::vector<Symbol>;

std::string tuple_str(const Tuple& t);

/// Base of all logarithms and exponentials in one computation.
enum class LogBase { Two, E, Ten };

double log_of(double x, LogBase b);
double exp_of(double x, LogBase b);

/// log_b of an exact cardinality.
double log_count(std::uint64_t n, LogBase b);

/// log_b(num/den) from exact counts; exact when den divides num.
double log_count_ratio(std::uint64_t num, std::uint64_t den, LogBase b);

}  // namespace nsleak
