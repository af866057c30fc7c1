#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "selfred/counting.hpp"
#include "selfred/enum_counter.hpp"
#include "selfred/errors.hpp"
#include "selfred/harness.hpp"
#include "selfred/level_pruning.hpp"
#include "selfred/oracles.hpp"
#include "selfred/parser.hpp"
#include "selfred/random_formula.hpp"
#include "selfred/selector_decider.hpp"

namespace py = pybind11;
using namespace selfred;

namespace {

// Counts cross the boundary as Python ints, via their decimal text.
py::int_ to_py(const BigCount& n) { return py::int_(py::str(n.str())); }

BigCount from_py(const py::int_& n) { return BigCount(py::str(static_cast<const py::handle&>(n)).cast<std::string>()); }

py::list to_py(const std::vector<BigCount>& values) {
  py::list out;
  for (const BigCount& v : values) out.append(to_py(v));
  return out;
}

py::dict assignment_dict(const Assignment& a) {
  py::dict out;
  for (const auto& [v, b] : a) out[py::int_(v)] = b;
  return out;
}

py::dict level_result(const LevelVerdict& v) {
  py::list widths;
  for (const TreeLevel& l : v.stats.levels) widths.append(py::make_tuple(l.pre_prune_width, l.post_prune_width));
  py::dict out;
  out["satisfiable"] = v.satisfiable;
  out["outcome"] = std::string(to_string(v.stats.outcome));
  out["oracle_calls"] = v.stats.oracle_calls;
  out["widths"] = widths;
  out["max_width"] = v.stats.max_width();
  out["threshold"] = v.stats.threshold ? py::object(to_py(*v.stats.threshold)) : py::object(py::none());
  return out;
}

template <typename E>
void map_style(const std::string& name, E& out, std::initializer_list<E> all) {
  for (E e : all) {
    if (to_string(e) == name) {
      out = e;
      return;
    }
  }
  throw InvalidParams("unknown oracle style '" + name + "'");
}

Algorithm algorithm_from(const std::string& name) {
  for (Algorithm a : {Algorithm::Selector, Algorithm::Tally, Algorithm::Sparse, Algorithm::EnumCount}) {
    if (to_string(a) == name) return a;
  }
  throw InvalidParams("unknown algorithm '" + name + "'");
}

SparseMode mode_from(const std::string& name) {
  if (name == "early_accept") return SparseMode::EarlyAccept;
  if (name == "capped_continue") return SparseMode::CappedContinue;
  throw InvalidParams("unknown mode '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_selfred, m) {
  m.doc() = "SAT decision and exact model counting from simulated oracles";

  auto base = py::register_exception<Error>(m, "SelfredError");
  py::register_exception<SyntaxError>(m, "FormulaSyntaxError", base.ptr());
  py::register_exception<InvalidParams>(m, "InvalidParams", base.ptr());
  py::register_exception<TooLarge>(m, "TooLarge", base.ptr());
  py::register_exception<OracleContractViolation>(m, "OracleContractViolation", base.ptr());

  py::class_<Formula>(m, "Formula")
      .def_property_readonly("text", &Formula::text)
      .def_property_readonly("key", &Formula::key)
      .def_property_readonly("vars", [](const Formula& f) { return std::vector<VarIndex>(f.vars().begin(), f.vars().end()); })
      .def_property_readonly("encoding_length", &Formula::encoding_length)
      .def_property_readonly("is_constant", &Formula::is_constant)
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__hash__", [](const Formula& f) { return py::hash(py::str(f.key())); })
      .def("__str__", &Formula::text)
      .def("__repr__", [](const Formula& f) { return "Formula('" + f.key() + "')"; });

  m.def("parse", [](const std::string& text) { return parse(text); }, py::arg("text"));
  m.def("parse_dimacs", [](const std::string& text) { return parse_dimacs(text); }, py::arg("text"));
  m.def("simplify", py::overload_cast<const Formula&>(&simplify), py::arg("formula"));
  m.def("substitute", &substitute, py::arg("formula"), py::arg("var"), py::arg("value"));
  m.def("self_reduce", [](const Formula& f) {
    SelfReduction r = self_reduce(f);
    return py::make_tuple(r.if_true, r.if_false, r.split_var);
  });
  m.def("evaluate", [](const Formula& f, const Assignment& a) { return evaluate(f, a); },
        py::arg("formula"), py::arg("assignment"));
  m.def("brute_force_count", [](const Formula& f, std::size_t limit) { return to_py(brute_force_count(f, limit)); },
        py::arg("formula"), py::arg("limit") = kDefaultBruteLimit);
  m.def("brute_force_sat", &brute_force_sat, py::arg("formula"), py::arg("limit") = kDefaultBruteLimit);
  m.def("generate_random", &generate_random, py::arg("vars"), py::arg("node_budget"), py::arg("seed"));

  py::class_<SelectorOracle>(m, "SelectorOracle")
      .def("choose", &SelectorOracle::choose)
      .def_property_readonly("name", &SelectorOracle::name)
      .def_property_readonly("calls", &SelectorOracle::calls);
  py::class_<TallyReductionOracle>(m, "TallyReductionOracle")
      .def("map", &TallyReductionOracle::map)
      .def_property_readonly("name", &TallyReductionOracle::name)
      .def_property_readonly("calls", &TallyReductionOracle::calls);
  py::class_<SparseCoReductionOracle>(m, "SparseCoReductionOracle")
      .def("map", &SparseCoReductionOracle::map)
      .def_property_readonly("target", &SparseCoReductionOracle::target)
      .def_property_readonly("name", &SparseCoReductionOracle::name)
      .def_property_readonly("calls", &SparseCoReductionOracle::calls);
  py::class_<TwoEnumeratorOracle>(m, "TwoEnumeratorOracle")
      .def("enumerate", [](const TwoEnumeratorOracle& h, const Formula& f) { return to_py(h.enumerate(f)); })
      .def_property_readonly("name", &TwoEnumeratorOracle::name)
      .def_property_readonly("calls", &TwoEnumeratorOracle::calls);

  m.def("honest_selector", [] { return honest_selector(); });
  m.def("adversarial_selector", [](std::uint64_t seed) { return adversarial_selector(seed); }, py::arg("seed"));
  m.def("tally_reduction", [](const std::string& style) {
    TallyStyle s{};
    map_style(style, s, {TallyStyle::Canonical, TallyStyle::CollisionRich, TallyStyle::Spread});
    return simulated_tally_reduction(s);
  }, py::arg("style") = "canonical");
  m.def("sparse_coreduction", [](const std::string& style, std::uint64_t seed) {
    SparseStyle s{};
    map_style(style, s, {SparseStyle::Singleton, SparseStyle::Scatter});
    return simulated_sparse_coreduction(s, seed);
  }, py::arg("style") = "singleton", py::arg("seed") = 0);
  m.def("two_enumerator", [](const std::string& style, std::uint64_t seed) {
    EnumeratorStyle s{};
    map_style(style, s, {EnumeratorStyle::ExactPlusOffset, EnumeratorStyle::Woeginger});
    return honest_two_enumerator(s, seed);
  }, py::arg("style") = "exact_plus_offset", py::arg("seed") = 0);

  m.def("decide_via_selector", [](const Formula& f, const SelectorOracle& oracle) {
    const SelectorVerdict v = decide_via_selector(f, oracle);
    py::dict out;
    out["satisfiable"] = v.satisfiable;
    out["oracle_calls"] = v.trace.oracle_calls;
    out["assignment"] = assignment_dict(v.trace.assignment());
    return out;
  });
  m.def("decide_via_tally", [](const Formula& f, const TallyReductionOracle& g) {
    return level_result(decide_via_tally(f, g));
  });
  m.def("decide_via_sparse", [](const Formula& f, const SparseCoReductionOracle& g, const std::string& mode) {
    return level_result(decide_via_sparse(f, g, mode_from(mode)));
  }, py::arg("formula"), py::arg("oracle"), py::arg("mode") = "early_accept");
  m.def("count_via_enumerator", [](const Formula& f, const TwoEnumeratorOracle& h) {
    const EnumCount c = count_via_enumerator(f, h);
    py::list chain;
    for (const Linkage& l : c.chain) {
      py::dict mapping;
      for (const auto& [child, root] : l.mapping) mapping[to_py(child)] = to_py(root);
      chain.append(py::make_tuple(l.child.key(), std::string(to_string(l.side)), mapping));
    }
    py::dict out;
    out["count"] = to_py(c.count);
    out["oracle_calls"] = c.oracle_calls;
    out["chain"] = chain;
    return out;
  });

  m.def("combine", [](const Formula& f, const Formula& g) {
    CombineRecipe r = combine(f, g);
    return py::make_tuple(r.combined, r.left_var_count, r.right_var_count);
  }, "Returns (combined formula, n, m).");
  m.def("decode", [](const Formula& f, const Formula& g, const py::int_& count) {
    const DecodedPair d = decode(combine(f, g), from_py(count));
    return py::make_tuple(to_py(d.left), to_py(d.right), d.in_range);
  }, "Splits a combined count into (left, right, in_range).");
  m.def("link_guesses", [](const std::vector<std::tuple<py::int_, py::int_, py::int_>>& triples) {
    std::vector<GuessTriple> survivors;
    for (const auto& [a, b, c] : triples) survivors.push_back({from_py(a), from_py(b), from_py(c)});
    const LinkDecision d = link_guesses(survivors);
    py::dict out;
    out["resolved"] = d.resolved ? py::object(to_py(*d.resolved)) : py::object(py::none());
    out["side"] = std::string(to_string(d.side));
    py::list mapping;
    if (!d.resolved) {
      for (const auto& [child, root] : d.mapping) mapping.append(py::make_tuple(to_py(child), to_py(root)));
    }
    out["mapping"] = mapping;
    return out;
  });
  m.def("naive_failure_json", &naive_failure_json);

  m.def("run_experiment", [](const std::string& algorithm, std::optional<std::string> inline_text,
                             std::optional<std::string> file, std::optional<std::vector<std::string>> random,
                             const std::string& style, std::uint64_t seed, const std::string& mode, bool verify) {
    ExperimentConfig config;
    config.algorithm = algorithm_from(algorithm);
    config.oracle_style = style;
    config.seed = seed;
    config.mode = mode_from(mode);
    config.verify = verify;
    if (int(inline_text.has_value()) + int(file.has_value()) + int(random.has_value()) != 1) {
      throw InvalidParams("give exactly one of inline, file, random");
    }
    if (inline_text) config.input = InlineSource{*inline_text};
    if (file) config.input = FileSource{*file};
    if (random) config.input = parse_random_spec(*random);
    const RunReport report = run(config);
    std::ostringstream trace, csv;
    write_trace(report, trace);
    write_summary_csv(report, csv);
    return py::make_tuple(trace.str(), csv.str(), report.ok());
  }, py::arg("algorithm"), py::kw_only(), py::arg("inline") = py::none(), py::arg("file") = py::none(),
     py::arg("random") = py::none(), py::arg("style") = "", py::arg("seed") = 0,
     py::arg("mode") = "early_accept", py::arg("verify") = true,
     "Runs the harness; returns (JSONL trace, CSV summary, ok).");
}
