#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nsleak/dataset.hpp"
#include "nsleak/errors.hpp"
#include "nsleak/joint_range.hpp"
#include "nsleak/leakage.hpp"
#include "nsleak/measures.hpp"
#include "nsleak/overlap.hpp"
#include "nsleak/stochastic.hpp"

namespace py = pybind11;
using namespace nsleak;

namespace {

Symbol to_symbol(const py::handle& obj) {
  if (py::isinstance<py::bool_>(obj)) return Symbol(static_cast<std::int64_t>(obj.cast<bool>()));
  if (py::isinstance<py::int_>(obj)) return Symbol(obj.cast<std::int64_t>());
  if (py::isinstance<py::float_>(obj)) return Symbol(obj.cast<double>());
  if (py::isinstance<py::str>(obj)) return Symbol(obj.cast<std::string>());
  throw DomainError("symbols must be int, float, or str");
}

py::object from_symbol(const Symbol& s) {
  if (s.is_text()) return py::cast(s.text());
  const double v = s.number();
  if (v == static_cast<double>(static_cast<std::int64_t>(v))) {
    return py::cast(static_cast<std::int64_t>(v));
  }
  return py::cast(v);
}

Tuple to_tuple(const py::handle& obj) {
  if (py::isinstance<py::tuple>(obj) || py::isinstance<py::list>(obj)) {
    Tuple t;
    for (const auto& item : obj) t.push_back(to_symbol(item));
    return t;
  }
  return {to_symbol(obj)};
}

py::tuple from_tuple(const Tuple& t) {
  py::tuple out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = from_symbol(t[i]);
  return out;
}

py::list from_tuples(const std::vector<Tuple>& ts) {
  py::list out;
  for (const Tuple& t : ts) out.append(from_tuple(t));
  return out;
}

VariableSelector to_selector(const py::handle& obj) {
  if (py::isinstance<py::str>(obj)) return VariableSelector(obj.cast<std::string>());
  return VariableSelector(obj.cast<std::vector<std::string>>());
}

AttributePartition to_partition(const py::handle& obj) {
  std::vector<std::vector<Tuple>> blocks;
  for (const auto& block : obj) {
    std::vector<Tuple> b;
    for (const auto& element : block) b.push_back(to_tuple(element));
    blocks.push_back(std::move(b));
  }
  return AttributePartition(std::move(blocks));
}

py::list from_partition(const AttributePartition& p) {
  py::list out;
  for (const auto& block : p.blocks()) out.append(from_tuples(block));
  return out;
}

LogBase to_base(const py::handle& obj) {
  if (py::isinstance<py::str>(obj)) {
    const auto s = obj.cast<std::string>();
    if (s == "2") return LogBase::Two;
    if (s == "e") return LogBase::E;
    if (s == "10") return LogBase::Ten;
  } else if (py::isinstance<py::int_>(obj)) {
    const auto v = obj.cast<int>();
    if (v == 2) return LogBase::Two;
    if (v == 10) return LogBase::Ten;
  }
  throw DomainError("base must be 2, 10, or 'e'");
}

py::dict from_report(const LeakageReport& r) {
  py::dict d;
  d["leakage"] = r.leakage;
  d["argmin_y"] = from_tuples(r.argmin_y);
  d["prior_cost"] = r.prior_cost;
  d["min_posterior_cost"] = r.min_posterior_cost;
  return d;
}

}  // namespace

PYBIND11_MODULE(_nsleak, m) {
  m.doc() = "Non-stochastic information-leakage measures over finite data";

  py::register_exception<SelectorError>(m, "SelectorError", PyExc_ValueError);
  py::register_exception<EmptyConditionError>(m, "EmptyConditionError", PyExc_ValueError);
  py::register_exception<PartitionError>(m, "PartitionError", PyExc_ValueError);
  py::register_exception<OracleCapError>(m, "OracleCapError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  py::class_<JointRange>(m, "JointRange")
      .def(py::init([](const std::vector<std::string>& variables, const py::iterable& tuples) {
             std::vector<Tuple> ts;
             for (const auto& t : tuples) ts.push_back(to_tuple(t));
             return JointRange(variables, std::move(ts));
           }),
           py::arg("variables"), py::arg("tuples"))
      .def_property_readonly("variables", &JointRange::variables)
      .def_property_readonly("tuples",
                             [](const JointRange& jr) { return from_tuples(jr.tuples()); })
      .def("__len__", &JointRange::size);

  m.def(
      "marginal_range",
      [](const JointRange& jr, const py::handle& v) {
        return from_tuples(marginal_range(jr, to_selector(v)));
      },
      py::arg("jr"), py::arg("variables"));

  m.def(
      "conditional_range",
      [](const JointRange& jr, const py::handle& target, const py::handle& cond,
         const py::handle& value) {
        return from_tuples(
            conditional_range(jr, to_selector(target), to_selector(cond), to_tuple(value)));
      },
      py::arg("jr"), py::arg("target"), py::arg("given"), py::arg("value"));

  m.def(
      "is_unrelated",
      [](const JointRange& jr, const py::handle& a, const py::handle& b) {
        return is_unrelated(jr, to_selector(a), to_selector(b));
      },
      py::arg("jr"), py::arg("a"), py::arg("b"));

  m.def(
      "is_markov_chain",
      [](const JointRange& jr, const py::handle& a, const py::handle& b,
         const py::handle& c) {
        return is_markov_chain(jr, to_selector(a), to_selector(b), to_selector(c));
      },
      py::arg("jr"), py::arg("a"), py::arg("b"), py::arg("c"));

  m.def(
      "hartley_entropy",
      [](const JointRange& jr, const py::handle& v, const py::handle& base) {
        return hartley_entropy(jr, to_selector(v), to_base(base));
      },
      py::arg("jr"), py::arg("variables"), py::arg("base") = py::int_(2));

  m.def(
      "conditional_hartley_entropy",
      [](const JointRange& jr, const py::handle& target, const py::handle& cond,
         const py::handle& base) {
        return conditional_hartley_entropy(jr, to_selector(target), to_selector(cond),
                                           to_base(base));
      },
      py::arg("jr"), py::arg("target"), py::arg("given"), py::arg("base") = py::int_(2));

  m.def(
      "zero_mutual_information",
      [](const JointRange& jr, const py::handle& a, const py::handle& b,
         const py::handle& base) {
        return zero_mutual_information(jr, to_selector(a), to_selector(b), to_base(base));
      },
      py::arg("jr"), py::arg("a"), py::arg("b"), py::arg("base") = py::int_(2));

  m.def(
      "guessing_leakage",
      [](const JointRange& jr, const py::handle& blocks, const py::handle& x,
         const py::handle& y, const py::handle& base) {
        return from_report(
            guessing_leakage(jr, to_partition(blocks), to_selector(x), to_selector(y), to_base(base)));
      },
      py::arg("jr"), py::arg("attribute_blocks"), py::arg("x"), py::arg("y"),
      py::arg("base") = py::int_(2));

  m.def(
      "maximal_leakage",
      [](const JointRange& jr, const py::handle& x, const py::handle& y,
         const py::handle& base) {
        return from_report(maximal_leakage(jr, to_selector(x), to_selector(y), to_base(base)));
      },
      py::arg("jr"), py::arg("x"), py::arg("y"), py::arg("base") = py::int_(2));

  m.def(
      "maximal_leakage_oracle",
      [](const JointRange& jr, const py::handle& x, const py::handle& y,
         const py::handle& base, std::size_t cap) {
        const auto result = maximal_leakage_oracle(jr, to_selector(x), to_selector(y),
                                                   to_base(base), cap);
        py::dict d = from_report(result.report);
        d["best_partition"] = from_partition(result.best);
        d["partitions_checked"] = result.partitions_checked;
        return d;
      },
      py::arg("jr"), py::arg("x"), py::arg("y"), py::arg("base") = py::int_(2),
      py::arg("cap") = kDefaultOracleCap);

  m.def(
      "worst_case_attribute",
      [](const JointRange& jr, const py::handle& x, const py::handle& y) {
        return from_partition(worst_case_attribute(jr, to_selector(x), to_selector(y)));
      },
      py::arg("jr"), py::arg("x"), py::arg("y"));

  m.def(
      "is_epsilon_identifiable",
      [](const JointRange& jr, const py::handle& blocks, const py::handle& x,
         const py::handle& y, double epsilon, const py::handle& base) {
        return is_epsilon_identifiable(jr, to_partition(blocks), to_selector(x),
                                       to_selector(y), epsilon, to_base(base));
      },
      py::arg("jr"), py::arg("attribute_blocks"), py::arg("x"), py::arg("y"),
      py::arg("epsilon"), py::arg("base") = py::int_(2));

  m.def(
      "convert_leakage_maximal",
      [](std::uint64_t n_x, double value, const std::string& direction,
         const py::handle& base) {
        ConvertDirection dir;
        if (direction == "maximal_to_leakage") {
          dir = ConvertDirection::MaximalToLeakage;
        } else if (direction == "leakage_to_maximal") {
          dir = ConvertDirection::LeakageToMaximal;
        } else {
          throw DomainError("direction must be 'maximal_to_leakage' or 'leakage_to_maximal'");
        }
        return convert_leakage_maximal(n_x, value, dir, to_base(base));
      },
      py::arg("n_x"), py::arg("value"), py::arg("direction"), py::arg("base") = py::int_(2));

  m.def(
      "identifiability_bound",
      [](std::uint64_t n_x, double epsilon, const py::handle& base) {
        return identifiability_bound(n_x, epsilon, to_base(base));
      },
      py::arg("n_x"), py::arg("epsilon"), py::arg("base") = py::int_(2));

  m.def(
      "overlap_partition",
      [](const JointRange& jr, const py::handle& x, const py::handle& y) {
        const auto part = overlap_partition(jr, to_selector(x), to_selector(y));
        py::list blocks;
        for (const auto& block : part.blocks) blocks.append(from_tuples(block));
        py::dict labels;
        for (std::size_t i = 0; i < part.domain.size(); ++i) {
          labels[from_tuple(part.domain[i])] = part.labels[i];
        }
        py::dict d;
        d["blocks"] = blocks;
        d["block_of"] = labels;
        return d;
      },
      py::arg("jr"), py::arg("x"), py::arg("y"));

  m.def(
      "maximin_information",
      [](const JointRange& jr, const py::handle& x, const py::handle& y,
         const py::handle& base) {
        return maximin_information(jr, to_selector(x), to_selector(y), to_base(base));
      },
      py::arg("jr"), py::arg("x"), py::arg("y"), py::arg("base") = py::int_(2));

  m.def(
      "one_shot_sup_oracle",
      [](const JointRange& jr, const py::handle& x, const py::handle& y,
         const py::handle& base, std::size_t cap) {
        const auto result = one_shot_sup_oracle(jr, to_selector(x), to_selector(y),
                                                to_base(base), cap);
        py::dict d;
        d["value"] = result.value;
        d["best_partition"] = from_partition(result.best);
        d["admissible_count"] = result.admissible_count;
        return d;
      },
      py::arg("jr"), py::arg("x"), py::arg("y"), py::arg("base") = py::int_(2),
      py::arg("cap") = kDefaultOracleCap);

  py::class_<EmpiricalJoint>(m, "EmpiricalJoint")
      .def_static("from_pairs",
                  [](const py::iterable& pairs) {
                    std::vector<EmpiricalJoint::Pair> ps;
                    for (const auto& p : pairs) {
                      auto seq = p.cast<py::sequence>();
                      ps.emplace_back(to_symbol(seq[0]), to_symbol(seq[1]));
                    }
                    return EmpiricalJoint::from_pairs(ps);
                  })
      .def_property_readonly("total", &EmpiricalJoint::total)
      .def_property_readonly("counts", [](const EmpiricalJoint& ej) {
        py::dict d;
        for (const auto& [pair, count] : ej.counts()) {
          d[py::make_tuple(from_symbol(pair.first), from_symbol(pair.second))] = count;
        }
        return d;
      });

  m.def(
      "sibson_infinity_leakage",
      [](const EmpiricalJoint& ej, const py::handle& base) {
        return sibson_infinity_leakage(ej, to_base(base));
      },
      py::arg("ej"), py::arg("base") = py::int_(2));

  m.def(
      "guessing_entropy",
      [](const std::vector<double>& pmf) { return guessing_entropy(pmf); },
      py::arg("pmf"));

  m.def("stochastic_guessing_leakage", &stochastic_guessing_leakage, py::arg("ej"));

  m.def(
      "uniform_quantize",
      [](double y, double delta) { return uniform_quantize(y, QuantizerSpec{delta}); },
      py::arg("y"), py::arg("delta"));

  m.def(
      "max_distortion",
      [](const std::vector<double>& ys, double delta) {
        return max_distortion(ys, QuantizerSpec{delta});
      },
      py::arg("ys"), py::arg("delta"));

  m.def("majority_vote_fixture", &majority_vote_fixture, py::arg("n"));

  m.def(
      "majority_vote_bit_attribute",
      [](int n, int voter) { return from_partition(majority_vote_bit_attribute(n, voter)); },
      py::arg("n"), py::arg("voter"));

  m.def(
      "vote_table",
      [](int n_max, const py::handle& base) {
        py::list rows;
        for (const auto& r : vote_table(n_max, to_base(base))) {
          py::dict d;
          d["n"] = r.n;
          d["l_individual"] = r.l_individual;
          d["l_all"] = r.l_all;
          d["l_star"] = r.l_star;
          d["i_star"] = r.i_star;
          rows.append(d);
        }
        return rows;
      },
      py::arg("n_max"), py::arg("base") = py::int_(2));
}
