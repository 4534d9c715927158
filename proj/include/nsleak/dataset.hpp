#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nsleak/joint_range.hpp"
#include "nsleak/leakage.hpp"
#include "nsleak/symbol.hpp"

namespace nsleak {

/// Rectangular numeric table; missing cells are normalized to nullopt.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;

  std::size_t column_index(const std::string& name) const;  // throws DataError
};

struct LoadOptions {
  char delimiter = ',';
  /// Cells equal to this token (textually or numerically) are missing;
  /// "?" is always treated as missing.
  std::string missing_marker = "-9";
  /// Names for a headerless file; when absent, the first row is used as a
  /// header if it does not parse as data, otherwise columns are named
  /// c1..cN.
  std::optional<std::vector<std::string>> column_names;
};

/// Parses a delimiter-separated numeric file. Ragged or non-numeric rows
/// raise DataError with the offending row number; rows with missing cells
/// are kept and filtered per column by build_joint.
Table load_table(const std::filesystem::path& path, const LoadOptions& opts = {});

/// Uniform quantizer step size (resolution); must be positive.
struct QuantizerSpec {
  double delta;
};

/// Centroid of the bucket containing y: delta * (floor(y / delta) + 1/2).
double uniform_quantize(double y, const QuantizerSpec& q);

/// Largest quantization error over the observed values.
double max_distortion(std::span<const double> ys, const QuantizerSpec& q);

/// How dataset rows become realizations: `Record` tags every row with a
/// unique identifier (each row is its own realization, |[[x]]| = row
/// count); `Value` collapses identical (x, y) pairs to one realization.
enum class RangeSemantics { Record, Value };

/// Name of the synthetic row-identifier variable added in record mode.
inline constexpr const char* kRecordVariable = "record";

/// Joint range of (x_col, quantized y_col) under the chosen semantics. Rows
/// missing either selected column are dropped; record mode prepends a
/// row-ordinal variable.
JointRange build_joint(const Table& t, const std::string& x_col,
                       const std::string& y_col,
                       const std::optional<QuantizerSpec>& q, RangeSemantics sem);

/// Raw (x, quantized y) observations with multiplicity, for the empirical
/// stochastic measures. Same missing-row policy as build_joint.
std::vector<std::pair<Symbol, Symbol>> column_pairs(
    const Table& t, const std::string& x_col, const std::string& y_col,
    const std::optional<QuantizerSpec>& q);

/// Joint range of n binary votes and their majority decision. The vote
/// vector is packed into one integer realization with voter i at bit i-1;
/// the decision is 1 iff at least half the votes are 1.
JointRange majority_vote_fixture(int n);

/// Attribute "vote of individual i" over the fixture's [[x]]: two blocks
/// split by bit i-1.
AttributePartition majority_vote_bit_attribute(int n, int voter);

inline constexpr int kMaxVoters = 20;

}  // namespace nsleak
