#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsleak/errors.hpp"
#include "nsleak/measures.hpp"
#include "nsleak/selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitSelfTest = 4;

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

nsleak::LogBase parse_log_base(const std::string& s) {
  if (s == "2") return nsleak::LogBase::Two;
  if (s == "e") return nsleak::LogBase::E;
  if (s == "10") return nsleak::LogBase::Ten;
  throw nsleak::DomainError("log base must be one of 2, e, 10");
}

nsleak::RangeSemantics parse_semantics(const std::string& s) {
  if (s == "record") return nsleak::RangeSemantics::Record;
  if (s == "value") return nsleak::RangeSemantics::Value;
  throw nsleak::DomainError("semantics must be 'record' or 'value'");
}

std::vector<double> parse_delta_range(const std::string& range_text) {
  double start = 0, stop = 0, step = 0;
  std::stringstream ss(range_text);
  std::string part;
  std::vector<double> parts;
  while (std::getline(ss, part, ':')) parts.push_back(std::stod(part));
  if (parts.size() != 3) {
    throw nsleak::DomainError("delta range must be start:stop:step");
  }
  start = parts[0];
  stop = parts[1];
  step = parts[2];
  if (!(start > 0) || !(step > 0) || stop < start) {
    throw nsleak::DomainError("delta range needs start > 0, step > 0, stop >= start");
  }
  if ((stop - start) / step > 100000.0) {
    throw nsleak::DomainError("delta range has more than 100000 steps");
  }
  std::vector<double> deltas;
  for (double d = start; d <= stop + step * 1e-9; d += step) deltas.push_back(d);
  return deltas;
}

struct OutputTarget {
  std::string path;  // empty: stdout

  void write(const std::string& content) const {
    if (path.empty()) {
      std::cout << content;
      return;
    }
    std::ofstream out(path);
    if (!out) throw nsleak::DataError("cannot write '" + path + "'");
    out << content;
  }
};

struct DatasetArgs {
  std::string input;
  std::string x_col;
  std::string y_col;
  std::string semantics = "record";
  std::string missing_marker = "-9";
  std::string delimiter = ",";
  std::vector<std::string> column_names;

  nsleak::Table load() const {
    nsleak::LoadOptions opts;
    if (delimiter.size() != 1) {
      throw nsleak::DomainError("delimiter must be a single character");
    }
    opts.delimiter = delimiter[0];
    opts.missing_marker = missing_marker;
    if (!column_names.empty()) opts.column_names = column_names;
    return nsleak::load_table(input, opts);
  }
};

void add_dataset_flags(CLI::App* cmd, DatasetArgs& args) {
  cmd->add_option("--input", args.input, "Delimiter-separated input file")->required();
  cmd->add_option("--x-col", args.x_col, "Column holding the protected variable")->required();
  cmd->add_option("--y-col", args.y_col, "Column holding the released variable")->required();
  cmd->add_option("--semantics", args.semantics,
                  "record: every row is a distinct realization; value: identical "
                  "pairs collapse")
      ->check(CLI::IsMember({"record", "value"}));
  cmd->add_option("--missing-marker", args.missing_marker,
                  "Cell token treated as missing (besides '?')");
  cmd->add_option("--delimiter", args.delimiter, "Field delimiter");
  cmd->add_option("--columns", args.column_names,
                  "Column names for a headerless file (comma separated)")
      ->delimiter(',');
}

std::string measure_csv(const nsleak::MeasureReport& m) {
  std::string out =
      "delta,max_distortion,h0_x,h0_x_given_y,i0,l_guessing,l_star,i_star,sibson_inf";
  if (m.epsilon) out += ",epsilon,epsilon_identifiable";
  out += "\n";
  out += fmt(m.delta) + "," + fmt(m.max_distortion) + "," + fmt(m.h0_x) + "," +
         fmt(m.h0_x_given_y) + "," + fmt(m.i0) + "," + fmt(m.l_guessing) + "," +
         fmt(m.l_star) + "," + fmt(m.i_star) + "," + fmt(m.sibson_inf);
  if (m.epsilon) {
    out += "," + fmt(*m.epsilon) + "," + std::string(*m.epsilon_identifiable ? "true" : "false");
  }
  out += "\n";
  return out;
}

nlohmann::json measure_json(const nsleak::MeasureReport& m) {
  nlohmann::json j{{"delta", m.delta},
                   {"max_distortion", m.max_distortion},
                   {"h0_x", m.h0_x},
                   {"h0_x_given_y", m.h0_x_given_y},
                   {"i0", m.i0},
                   {"l_guessing", m.l_guessing},
                   {"l_star", m.l_star},
                   {"i_star", m.i_star},
                   {"sibson_inf", m.sibson_inf}};
  if (m.epsilon) {
    j["epsilon"] = *m.epsilon;
    j["epsilon_identifiable"] = *m.epsilon_identifiable;
  }
  return j;
}

std::string sweep_csv(const std::vector<nsleak::SweepRow>& rows) {
  std::string out = "delta,max_distortion,l_star,i_star,sibson_inf,l_identity\n";
  for (const auto& r : rows) {
    out += fmt(r.delta) + "," + fmt(r.max_distortion) + "," + fmt(r.l_star) + "," +
           fmt(r.i_star) + "," + fmt(r.sibson_inf) + "," + fmt(r.l_identity) + "\n";
  }
  return out;
}

nlohmann::json sweep_json(const std::vector<nsleak::SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"delta", r.delta},
                   {"max_distortion", r.max_distortion},
                   {"l_star", r.l_star},
                   {"i_star", r.i_star},
                   {"sibson_inf", r.sibson_inf},
                   {"l_identity", r.l_identity}});
  }
  return arr;
}

std::string vote_csv(const std::vector<nsleak::VoteRow>& rows) {
  std::string out = "n,l_individual,l_all,l_star,i_star\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + fmt(r.l_individual) + "," + fmt(r.l_all) + "," +
           fmt(r.l_star) + "," + fmt(r.i_star) + "\n";
  }
  return out;
}

nlohmann::json vote_json(const std::vector<nsleak::VoteRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"n", r.n},
                   {"l_individual", r.l_individual},
                   {"l_all", r.l_all},
                   {"l_star", r.l_star},
                   {"i_star", r.i_star}});
  }
  return arr;
}

int run(int argc, char** argv) {
  CLI::App app{"Non-stochastic information-leakage measures over finite data"};
  app.require_subcommand(1);

  // measure
  auto* measure = app.add_subcommand(
      "measure", "Every leakage measure for one dataset and step size");
  DatasetArgs m_data;
  add_dataset_flags(measure, m_data);
  double m_delta = 0.0;
  std::string m_base = "2";
  std::string m_format = "json";
  std::string m_output;
  std::optional<double> m_epsilon;
  double m_epsilon_raw = 0.0;
  measure->add_option("--delta", m_delta, "Quantizer step size for the released column")
      ->check(CLI::PositiveNumber);
  measure->add_option("--log-base", m_base)->check(CLI::IsMember({"2", "e", "10"}));
  auto* epsilon_opt = measure->add_option(
      "--epsilon", m_epsilon_raw, "Privacy budget for the identifiability verdict");
  measure->add_option("--format", m_format)->check(CLI::IsMember({"json", "csv"}));
  measure->add_option("--output", m_output, "Write to a file instead of stdout");

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "Privacy-utility sweep over quantizer step sizes");
  DatasetArgs s_data;
  add_dataset_flags(sweep, s_data);
  std::string s_range;
  double s_delta = 0.0;
  std::string s_base = "2";
  std::string s_format = "csv";
  std::string s_output;
  sweep->add_option("--delta-range", s_range, "start:stop:step (e.g. 1:50:1)");
  sweep->add_option("--delta", s_delta, "Single step size (degenerate sweep)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--log-base", s_base)->check(CLI::IsMember({"2", "e", "10"}));
  sweep->add_option("--format", s_format)->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--output", s_output, "Write to a file instead of stdout");

  // vote
  auto* vote = app.add_subcommand(
      "vote", "Majority-vote leakage table: one row per number of voters");
  int v_nmax = 15;
  std::string v_format = "csv";
  std::string v_output;
  std::string v_base = "2";
  vote->add_option("n_max", v_nmax, "Largest number of voters (1..20)");
  vote->add_option("--log-base", v_base)->check(CLI::IsMember({"2", "e", "10"}));
  vote->add_option("--format", v_format)->check(CLI::IsMember({"json", "csv"}));
  vote->add_option("--output", v_output, "Write to a file instead of stdout");

  // selftest
  auto* selftest = app.add_subcommand(
      "selftest", "Exhaustive oracle-equality and invariant suites");
  std::size_t t_cap = 8;
  std::uint64_t t_random = 1000;
  std::uint64_t t_seed = 20240915;
  selftest->add_option("--cap", t_cap, "Exhaustive-enumeration cap on |[[x]]| (1..8)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{8}));
  selftest->add_option("--random-instances", t_random, "Random instances per suite");
  selftest->add_option("--seed", t_seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*measure) {
      if (epsilon_opt->count() > 0) m_epsilon = m_epsilon_raw;
      std::optional<nsleak::QuantizerSpec> q;
      if (m_delta > 0.0) q = nsleak::QuantizerSpec{m_delta};
      const auto report = nsleak::measure_columns(
          m_data.load(), m_data.x_col, m_data.y_col, q,
          parse_semantics(m_data.semantics), parse_log_base(m_base), m_epsilon);
      OutputTarget out{m_output};
      out.write(m_format == "json" ? measure_json(report).dump(2) + "\n"
                                   : measure_csv(report));
      return kExitOk;
    }
    if (*sweep) {
      std::vector<double> deltas;
      if (!s_range.empty()) {
        deltas = parse_delta_range(s_range);
      } else if (s_delta > 0.0) {
        deltas = {s_delta};
      } else {
        throw nsleak::DomainError("sweep needs --delta-range or --delta");
      }
      const auto rows = nsleak::sweep_columns(s_data.load(), s_data.x_col, s_data.y_col,
                                              deltas, parse_semantics(s_data.semantics),
                                              parse_log_base(s_base));
      OutputTarget out{s_output};
      out.write(s_format == "json" ? sweep_json(rows).dump(2) + "\n" : sweep_csv(rows));
      return kExitOk;
    }
    if (*vote) {
      const auto rows = nsleak::vote_table(v_nmax, parse_log_base(v_base));
      OutputTarget out{v_output};
      out.write(v_format == "json" ? vote_json(rows).dump(2) + "\n" : vote_csv(rows));
      return kExitOk;
    }
    if (*selftest) {
      nsleak::SelfTestOptions opts;
      opts.oracle_cap = t_cap;
      opts.exhaustive_max_x = static_cast<int>(std::min<std::size_t>(t_cap, 4));
      opts.random_instances = t_random;
      opts.seed = t_seed;
      const auto report = nsleak::run_selftest(opts);
      for (const auto& suite : report.suites) {
        std::cout << (suite.passed() ? "[ ok ] " : "[FAIL] ") << suite.name
                  << "  instances=" << suite.instances
                  << " violations=" << suite.violations << "\n";
        if (!suite.passed()) {
          std::cout << "       counterexample: " << suite.first_counterexample << "\n";
        }
      }
      std::cout << (report.passed() ? "selftest passed" : "selftest FAILED")
                << " (" << report.total_instances() << " instances)\n";
      return report.passed() ? kExitOk : kExitSelfTest;
    }
  } catch (const nsleak::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const nsleak::EmptyConditionError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const nsleak::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
