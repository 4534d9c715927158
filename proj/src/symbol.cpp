#include "nsleak/symbol.hpp"

#include <charconv>
#include <cmath>

#include "nsleak/errors.hpp"

namespace nsleak {

double Symbol::number() const {
  if (std::holds_alternative<std::int64_t>(value_)) {
    return static_cast<double>(std::get<std::int64_t>(value_));
  }
  if (std::holds_alternative<double>(value_)) {
    return std::get<double>(value_);
  }
  throw DomainError("symbol '" + std::get<std::string>(value_) + "' is not numeric");
}

const std::string& Symbol::text() const {
  if (!is_text()) {
    throw DomainError("symbol " + str() + " is not text");
  }
  return std::get<std::string>(value_);
}

std::string Symbol::str() const {
  if (std::holds_alternative<std::int64_t>(value_)) {
    return std::to_string(std::get<std::int64_t>(value_));
  }
  if (std::holds_alternative<double>(value_)) {
    const double v = std::get<double>(value_);
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  }
  return std::get<std::string>(value_);
}

namespace {

// Numeric symbols live on one axis regardless of representation.
bool both_numeric(const Symbol& a, const Symbol& b) {
  return a.is_number() && b.is_number();
}

}  // namespace

bool operator==(const Symbol& a, const Symbol& b) {
  if (both_numeric(a, b)) {
    return static_cast<long double>(a.number()) == static_cast<long double>(b.number());
  }
  if (a.is_text() && b.is_text()) {
    return a.text() == b.text();
  }
  return false;
}

bool operator<(const Symbol& a, const Symbol& b) {
  if (both_numeric(a, b)) {
    return static_cast<long double>(a.number()) < static_cast<long double>(b.number());
  }
  if (a.is_text() && b.is_text()) {
    return a.text() < b.text();
  }
  return a.is_number();  // numbers before text
}

std::string tuple_str(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out += ",";
    out += t[i].str();
  }
  out += ")";
  return out;
}

double log_of(double x, LogBase b) {
  switch (b) {
    case LogBase::Two: return std::log2(x);
    case LogBase::E: return std::log(x);
    case LogBase::Ten: return std::log10(x);
  }
  return std::log2(x);
}

double exp_of(double x, LogBase b) {
  switch (b) {
    case LogBase::Two: return std::exp2(x);
    case LogBase::E: return std::exp(x);
    case LogBase::Ten: return std::pow(10.0, x);
  }
  return std::exp2(x);
}

double log_count(std::uint64_t n, LogBase b) {
  return log_of(static_cast<double>(n), b);
}

double log_count_ratio(std::uint64_t num, std::uint64_t den, LogBase b) {
  if (den != 0 && num % den == 0) {
    return log_count(num / den, b);
  }
  return log_of(static_cast<double>(num) / static_cast<double>(den), b);
}

}  // namespace nsleak
