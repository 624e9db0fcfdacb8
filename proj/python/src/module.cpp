#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fjs/core.hpp"
#include "fjs/error.hpp"
#include "fjs/exact.hpp"
#include "fjs/generate.hpp"
#include "fjs/heuristic.hpp"
#include "fjs/io.hpp"
#include "fjs/milp.hpp"
#include "fjs/model_io.hpp"

namespace py = pybind11;
using namespace fjs;

// Rationals cross the boundary as fractions.Fraction; int and str ("7/2")
// are accepted on input.
namespace pybind11::detail {

template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = parse_rational(src.cast<std::string>());
        return true;
      }
      if (py::isinstance<py::bool_>(src)) return false;
      if (py::isinstance<py::int_>(src)) {
        value = Rational(src.cast<std::int64_t>());
        return true;
      }
      if (py::hasattr(src, "numerator") && py::hasattr(src, "denominator") && !py::isinstance<py::float_>(src)) {
        value = Rational(src.attr("numerator").cast<std::int64_t>(), src.attr("denominator").cast<std::int64_t>());
        return true;
      }
    } catch (const py::cast_error&) {
      return false;
    }
    return false;
  }

  static handle cast(const Rational& r, return_value_policy, handle) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(r.numerator(), r.denominator()).release();
  }
};

}  // namespace pybind11::detail

namespace {

struct Solution {
  SolutionPair pair;
  Schedule schedule;
};

struct Result {
  Solution solution;
  std::string method;
  SolveStatus status = SolveStatus::optimal;
  Rational lower_bound;
  Rational upper_bound;
  std::uint64_t nodes = 0;
  double elapsed = 0;
  std::optional<Rational> est_makespan;
};

Result from_solve(const SolveResult& r, std::string method, bool with_est) {
  return {{r.solution, r.schedule}, std::move(method), r.status, r.lower_bound, r.upper_bound, r.nodes, r.elapsed,
          with_est ? std::optional<Rational>(r.est_makespan) : std::nullopt};
}

py::list issues_of(const ValidationReport& report) {
  py::list out;
  for (const auto& issue : report.issues) out.append(py::make_tuple(std::string(to_string(issue.kind)), issue.message));
  return out;
}

milp::ModelPoint to_point(const std::map<std::string, Rational>& values) { return {values}; }

std::vector<OpId> identity_order(std::size_t n) {
  std::vector<OpId> order(n);
  for (OpId v = 0; v < n; ++v) order[v] = v;
  return order;
}

Rational bound_or_default(const Instance& inst, const std::optional<Rational>& bound) {
  return bound ? *bound : milp::default_bound(inst, est(inst).schedule.makespan);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Flexible job shop scheduling with dag precedences: exact search, heuristic, MILP models, generators";

  // FjsError subclasses ValueError and carries the error code name in .code
  static const py::handle fjs_error = py::exception<FjsError>(m, "FjsError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const FjsError& e) {
      py::object err = fjs_error(e.what());
      err.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(fjs_error.ptr(), err.ptr());
    }
  });

  py::class_<Instance>(m, "Instance")
      .def(py::init([](std::string name, std::uint32_t machines, const std::vector<std::vector<std::pair<MachineId, Rational>>>& options,
                       const std::vector<std::pair<OpId, OpId>>& arcs, std::vector<std::uint32_t> job_of) {
             std::vector<std::vector<MachineOption>> opts;
             for (const auto& op : options) {
               auto& row = opts.emplace_back();
               for (const auto& [k, p] : op) row.push_back({k, p});
             }
             std::vector<Arc> a;
             for (const auto& [v, w] : arcs) a.push_back({v, w});
             return Instance::create(std::move(name), machines, std::move(opts), std::move(a), std::move(job_of));
           }),
           py::arg("name"), py::arg("machines"), py::arg("options"), py::arg("arcs") = std::vector<std::pair<OpId, OpId>>{},
           py::arg("job_of") = std::vector<std::uint32_t>{})
      .def_property_readonly("name", &Instance::name)
      .def_property_readonly("machine_count", &Instance::machine_count)
      .def_property_readonly("op_count", &Instance::op_count)
      .def_property_readonly("arcs",
                             [](const Instance& inst) {
                               std::vector<std::pair<OpId, OpId>> out;
                               for (const Arc& a : inst.arcs()) out.emplace_back(a.from, a.to);
                               return out;
                             })
      .def_property_readonly("job_of",
                             [](const Instance& inst) { return std::vector<std::uint32_t>(inst.job_of().begin(), inst.job_of().end()); })
      .def("options",
           [](const Instance& inst, OpId v) {
             if (v >= inst.op_count()) throw py::index_error("operation " + std::to_string(v) + " out of range");
             std::vector<std::pair<MachineId, Rational>> out;
             for (const auto& o : inst.options(v)) out.emplace_back(o.machine, o.time);
             return out;
           })
      .def("to_json", &io::serialize_instance)
      .def_static("from_json", &io::parse_instance, py::arg("document"))
      .def(py::self == py::self)
      .def("__repr__", [](const Instance& inst) {
        return "<Instance " + inst.name() + ": " + std::to_string(inst.op_count()) + " operations, " +
               std::to_string(inst.machine_count()) + " machines>";
      });

  py::class_<Solution>(m, "Solution")
      .def_property_readonly("assignment", [](const Solution& s) { return s.pair.assignment.machine; })
      .def_property_readonly("pairs",
                             [](const Solution& s) {
                               std::vector<std::pair<OpId, OpId>> out;
                               for (const Arc& a : s.pair.selection.pairs) out.emplace_back(a.from, a.to);
                               return out;
                             })
      .def_property_readonly("start", [](const Solution& s) { return s.schedule.start; })
      .def_property_readonly("makespan", [](const Solution& s) { return s.schedule.makespan; })
      .def_property_readonly("critical_path", [](const Solution& s) { return s.schedule.critical_path; })
      .def("sequences", [](const Solution& s, const Instance& inst) { return machine_sequences(inst, s.pair); },
           py::arg("instance"), "Operations per machine (index k - 1) in processing order.");

  py::class_<Result>(m, "Result")
      .def_readonly("solution", &Result::solution)
      .def_readonly("method", &Result::method)
      .def_property_readonly("status", [](const Result& r) { return std::string(to_string(r.status)); })
      .def_readonly("lower_bound", &Result::lower_bound)
      .def_readonly("upper_bound", &Result::upper_bound)
      .def_readonly("nodes", &Result::nodes)
      .def_readonly("elapsed", &Result::elapsed)
      .def_readonly("est_makespan", &Result::est_makespan)
      .def("to_json", [](const Result& r, const Instance& inst) {
        const io::SolverInfo info{r.method, r.status, r.lower_bound, r.upper_bound, r.elapsed, r.nodes, r.est_makespan};
        return io::serialize_solution(io::make_record(inst, r.solution.pair, r.solution.schedule, info));
      }, py::arg("instance"), "Solution file document for this result.");

  m.def("make_solution",
        [](const Instance& inst, std::vector<MachineId> assignment, const std::vector<std::vector<OpId>>& sequences) {
          SolutionPair pair{{std::move(assignment)}, Selection::from_sequences(sequences)};
          Schedule sched = tight_schedule(inst, pair);
          return Solution{std::move(pair), std::move(sched)};
        },
        py::arg("instance"), py::arg("assignment"), py::arg("sequences"),
        "Solution from a machine per operation and per-machine processing orders, with its tight schedule.");
  m.def("parse_solution", [](std::string_view document) {
    const auto rec = io::parse_solution(document);
    return Solution{rec.solution, rec.schedule};
  }, py::arg("document"));
  m.def("validate", [](const Instance& inst, const Solution& s) { return issues_of(validate_solution(inst, s.pair, s.schedule)); },
        py::arg("instance"), py::arg("solution"), "List of (kind, message) problems; empty when valid.");

  m.def("est", [](const Instance& inst) {
    const auto r = est(inst);
    return Solution{r.solution, r.schedule};
  }, py::arg("instance"));
  m.def("solve_exact",
        [](const Instance& inst, double time_limit, unsigned threads, std::optional<std::uint64_t> node_limit) {
          SolveOptions opts;
          opts.time_limit = time_limit;
          opts.threads = threads;
          opts.node_limit = node_limit;
          SolveResult r;
          {
            py::gil_scoped_release release;
            r = solve_exact(inst, opts);
          }
          return from_solve(r, "bnb", true);
        },
        py::arg("instance"), py::arg("time_limit") = 3600.0, py::arg("threads") = 1, py::arg("node_limit") = py::none());
  m.def("brute_force", [](const Instance& inst) { return from_solve(brute_force(inst), "brute-force", false); }, py::arg("instance"));
  m.def("root_lower_bound", &root_lower_bound, py::arg("instance"));
  m.def("lb_tight", &milp::lb_tight, py::arg("instance"));

  py::class_<milp::MilpModel>(m, "Model")
      .def_property_readonly("name", &milp::MilpModel::name)
      .def_property_readonly("kind", [](const milp::MilpModel& model) { return std::string(milp::to_string(model.kind())); })
      .def_property_readonly("stats",
                             [](const milp::MilpModel& model) {
                               const auto& s = model.stats();
                               py::dict d;
                               d["constraints"] = s.n_constraints;
                               d["variables"] = s.n_variables;
                               d["binaries"] = s.n_binary;
                               d["phi"] = s.phi;
                               d["phi_hat"] = s.phi_hat;
                               d["beta"] = s.beta;
                               d["bound"] = s.bound;
                               return d;
                             })
      .def_property_readonly("variables",
                             [](const milp::MilpModel& model) {
                               std::vector<std::string> names;
                               for (const auto& v : model.variables()) names.push_back(v.name);
                               return names;
                             })
      .def("to_lp", &milp::write_lp)
      .def("to_mps", &milp::write_mps)
      .def("check_feasible",
           [](const milp::MilpModel& model, const std::map<std::string, Rational>& point, const Rational& tol, bool integrality) {
             return issues_of(milp::check_feasible(model, to_point(point), {tol, integrality}));
           },
           py::arg("point"), py::arg("tol") = Rational(0), py::arg("integrality") = true)
      .def("objective", [](const milp::MilpModel& model, const std::map<std::string, Rational>& point) {
        return milp::objective_value(model, to_point(point));
      }, py::arg("point"));

  m.def("build_model",
        [](const std::string& kind, const Instance& inst, std::optional<Rational> bound) {
          return milp::build_model(milp::parse_model_kind(kind), inst, bound_or_default(inst, bound));
        },
        py::arg("kind"), py::arg("instance"), py::arg("bound") = py::none(),
        "kind is 'new' or 'ooy'; the bound defaults to the heuristic makespan.");
  m.def("encode",
        [](const std::string& kind, const Instance& inst, const Solution& s, std::optional<std::vector<OpId>> order) {
          const auto k = milp::parse_model_kind(kind);
          const auto point = k == milp::ModelKind::new_model
                                 ? milp::encode_new(inst, s.pair)
                                 : milp::encode_ooy(inst, s.pair, order ? *order : identity_order(inst.op_count()));
          return point.values;
        },
        py::arg("kind"), py::arg("instance"), py::arg("solution"), py::arg("order") = py::none());
  m.def("decode",
        [](const std::string& kind, const Instance& inst, const std::map<std::string, Rational>& point, const Rational& tol) {
          milp::DecodeOptions opts;
          opts.tol = tol;
          const auto d = milp::parse_model_kind(kind) == milp::ModelKind::new_model
                             ? milp::decode_new(inst, to_point(point), opts)
                             : milp::decode_ooy(inst, to_point(point), opts);
          return Solution{d.solution, d.schedule};
        },
        py::arg("kind"), py::arg("instance"), py::arg("point"), py::arg("tol") = Rational(0));
  m.def("fractional_witness", [](const Instance& inst, const Rational& bound) {
    return milp::ooy_fractional_witness(inst, bound).values;
  }, py::arg("instance"), py::arg("bound"));

  m.def("gen_yfjs",
        [](std::uint32_t jobs, std::uint32_t ops_per_job, std::uint32_t machines, std::uint32_t max_machines_per_op,
           std::uint64_t seed, std::string name) {
          return gen::gen_yfjs({jobs, ops_per_job, machines, max_machines_per_op, seed, std::move(name)});
        },
        py::arg("jobs"), py::arg("ops_per_job"), py::arg("machines"), py::arg("max_machines_per_op"), py::arg("seed"),
        py::arg("name") = "YFJS");
  m.def("gen_dafjs",
        [](std::uint32_t jobs, std::uint32_t machines, std::uint64_t seed, std::string name) {
          return gen::gen_dafjs({jobs, machines, seed, std::move(name)});
        },
        py::arg("jobs"), py::arg("machines"), py::arg("seed"), py::arg("name") = "DAFJS");

  py::class_<gen::Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("next", &gen::Rng::next)
      .def("below",
           [](gen::Rng& rng, std::uint64_t bound) {
             if (bound == 0) throw py::value_error("bound must be positive");
             return rng.below(bound);
           },
           py::arg("bound"))
      .def("uniform",
           [](gen::Rng& rng, std::int64_t lo, std::int64_t hi) {
             if (lo > hi) throw py::value_error("empty range");
             return rng.uniform(lo, hi);
           },
           py::arg("lo"), py::arg("hi"))
      .def("subset",
           [](gen::Rng& rng, std::uint32_t m, std::uint32_t size) {
             if (size > m) throw py::value_error("subset larger than the ground set");
             return rng.subset(m, size);
           },
           py::arg("m"), py::arg("size"));
}
