#include "nsleak/dataset.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

#include "nsleak/errors.hpp"

namespace nsleak {

std::size_t Table::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw DataError("column '" + name + "' not found");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  if (delimiter == ' ') {
    // Whitespace-delimited: split on runs.
    std::string current;
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!current.empty()) fields.push_back(std::move(current));
        current.clear();
      } else {
        current += c;
      }
    }
    if (!current.empty()) fields.push_back(std::move(current));
    return fields;
  }
  std::string current;
  for (char c : line) {
    if (c == delimiter) {
      fields.push_back(trim(std::move(current)));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(trim(std::move(current)));
  return fields;
}

std::optional<double> parse_number(const std::string& field) {
  if (field.empty()) return std::nullopt;
  const char* begin = field.data();
  const char* end = begin + field.size();
  double value = 0.0;
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
  return value;
}

bool is_missing(const std::string& field, const std::string& marker,
                std::optional<double> marker_number) {
  if (field == "?" || field == marker) return true;
  if (marker_number) {
    const auto value = parse_number(field);
    return value && *value == *marker_number;
  }
  return false;
}

}  // namespace

Table load_table(const std::filesystem::path& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path.string() + "'");
  }
  const auto marker_number = parse_number(opts.missing_marker);

  Table table;
  std::string line;
  std::size_t line_number = 0;
  bool header_done = false;
  if (opts.column_names) {
    table.columns = *opts.column_names;
    header_done = true;
  }

  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_fields(line, opts.delimiter);

    if (!header_done) {
      // First row is a header iff some field is neither numeric nor missing.
      const bool looks_like_data =
          std::all_of(fields.begin(), fields.end(), [&](const std::string& f) {
            return parse_number(f).has_value() ||
                   is_missing(f, opts.missing_marker, marker_number);
          });
      if (!looks_like_data) {
        table.columns = fields;
        header_done = true;
        continue;
      }
      for (std::size_t i = 0; i < fields.size(); ++i) {
        table.columns.push_back("c" + std::to_string(i + 1));
      }
      header_done = true;
      // fall through: this row is data
    }

    if (fields.size() != table.columns.size()) {
      throw DataError("row " + std::to_string(line_number) + ": expected " +
                      std::to_string(table.columns.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    std::vector<std::optional<double>> row;
    row.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (is_missing(fields[i], opts.missing_marker, marker_number)) {
        row.push_back(std::nullopt);
        continue;
      }
      const auto value = parse_number(fields[i]);
      if (!value) {
        throw DataError("row " + std::to_string(line_number) + ", column " +
                        table.columns[i] + ": cannot parse '" + fields[i] + "'");
      }
      row.push_back(value);
    }
    table.rows.push_back(std::move(row));
  }

  if (table.rows.empty()) {
    throw DataError("'" + path.string() + "' contains no data rows");
  }
  return table;
}

double uniform_quantize(double y, const QuantizerSpec& q) {
  if (!(q.delta > 0)) throw DomainError("step size must be positive");
  return q.delta * (std::floor(y / q.delta) + 0.5);
}

double max_distortion(std::span<const double> ys, const QuantizerSpec& q) {
  if (ys.empty()) throw DomainError("no values to quantize");
  double worst = 0.0;
  for (double y : ys) {
    worst = std::max(worst, std::abs(y - uniform_quantize(y, q)));
  }
  return worst;
}

namespace {

struct SelectedPairs {
  std::vector<double> xs;
  std::vector<double> ys;  // quantized when a spec is given
};

SelectedPairs select_pairs(const Table& t, const std::string& x_col,
                           const std::string& y_col,
                           const std::optional<QuantizerSpec>& q) {
  const std::size_t xi = t.column_index(x_col);
  const std::size_t yi = t.column_index(y_col);
  SelectedPairs out;
  for (const auto& row : t.rows) {
    if (!row[xi] || !row[yi]) continue;  // drop rows missing a selected column
    out.xs.push_back(*row[xi]);
    out.ys.push_back(q ? uniform_quantize(*row[yi], *q) : *row[yi]);
  }
  if (out.xs.empty()) {
    throw DataError("no rows remain after dropping missing values in '" + x_col +
                    "'/'" + y_col + "'");
  }
  return out;
}

}  // namespace

JointRange build_joint(const Table& t, const std::string& x_col,
                       const std::string& y_col,
                       const std::optional<QuantizerSpec>& q, RangeSemantics sem) {
  const SelectedPairs pairs = select_pairs(t, x_col, y_col, q);

  if (sem == RangeSemantics::Value) {
    std::vector<Tuple> tuples;
    tuples.reserve(pairs.xs.size());
    for (std::size_t i = 0; i < pairs.xs.size(); ++i) {
      tuples.push_back({Symbol(pairs.xs[i]), Symbol(pairs.ys[i])});
    }
    return JointRange({x_col, y_col}, std::move(tuples));
  }

  std::string record_name = kRecordVariable;
  while (record_name == x_col || record_name == y_col) record_name = "_" + record_name;
  std::vector<Tuple> tuples;
  tuples.reserve(pairs.xs.size());
  for (std::size_t i = 0; i < pairs.xs.size(); ++i) {
    tuples.push_back({Symbol(static_cast<std::int64_t>(i)), Symbol(pairs.xs[i]),
                      Symbol(pairs.ys[i])});
  }
  return JointRange({record_name, x_col, y_col}, std::move(tuples));
}

std::vector<std::pair<Symbol, Symbol>> column_pairs(const Table& t,
                                                    const std::string& x_col,
                                                    const std::string& y_col,
                                                    const std::optional<QuantizerSpec>& q) {
  const SelectedPairs pairs = select_pairs(t, x_col, y_col, q);
  std::vector<std::pair<Symbol, Symbol>> out;
  out.reserve(pairs.xs.size());
  for (std::size_t i = 0; i < pairs.xs.size(); ++i) {
    out.emplace_back(Symbol(pairs.xs[i]), Symbol(pairs.ys[i]));
  }
  return out;
}

JointRange majority_vote_fixture(int n) {
  if (n < 1 || n > kMaxVoters) {
    throw DomainError("voter count must be in 1.." + std::to_string(kMaxVoters));
  }
  const std::int64_t count = std::int64_t{1} << n;
  std::vector<Tuple> tuples;
  tuples.reserve(static_cast<std::size_t>(count));
  for (std::int64_t votes = 0; votes < count; ++votes) {
    const int ones = std::popcount(static_cast<std::uint64_t>(votes));
    const std::int64_t decision = (2 * ones >= n) ? 1 : 0;
    tuples.push_back({Symbol(votes), Symbol(decision)});
  }
  return JointRange({"x", "y"}, std::move(tuples));
}

AttributePartition majority_vote_bit_attribute(int n, int voter) {
  if (n < 1 || n > kMaxVoters) {
    throw DomainError("voter count must be in 1.." + std::to_string(kMaxVoters));
  }
  if (voter < 1 || voter > n) {
    throw DomainError("voter index must be in 1.." + std::to_string(n));
  }
  const std::int64_t count = std::int64_t{1} << n;
  const std::int64_t mask = std::int64_t{1} << (voter - 1);
  std::vector<std::vector<Tuple>> blocks(2);
  for (std::int64_t votes = 0; votes < count; ++votes) {
    blocks[(votes & mask) ? 1 : 0].push_back({Symbol(votes)});
  }
  return AttributePartition(std::move(blocks));
}

}  // namespace nsleak
