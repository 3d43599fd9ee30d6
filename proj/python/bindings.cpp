#include "cslab/bks.hpp"
#include "cslab/constructions.hpp"
#include "cslab/creal.hpp"
#include "cslab/logic.hpp"
#include "cslab/scenario.hpp"
#include "cslab/schedule.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace pybind11::detail {

// cslab::Rational <-> fractions.Fraction
template <>
struct type_caster<cslab::Rational> {
    PYBIND11_TYPE_CASTER(cslab::Rational, const_name("Fraction"));

    bool load(handle src, bool) {
        if (src.is_none()) return false;
        try {
            if (py::isinstance<py::str>(src)) {
                value = cslab::rational_from_string(py::cast<std::string>(src));
                return true;
            }
            if (py::isinstance<py::int_>(src)) {
                value = cslab::Rational(cslab::Int(py::cast<std::string>(py::str(src))), 1);
                return true;
            }
            py::object fraction = py::module_::import("fractions").attr("Fraction");
            if (py::isinstance(src, fraction)) {
                cslab::Int num(py::cast<std::string>(py::str(src.attr("numerator"))));
                cslab::Int den(py::cast<std::string>(py::str(src.attr("denominator"))));
                value = cslab::Rational(num, den);
                return true;
            }
        } catch (const std::exception&) {
            return false;
        }
        return false;
    }

    static handle cast(const cslab::Rational& q, return_value_policy, handle) {
        py::object fraction = py::module_::import("fractions").attr("Fraction");
        return fraction(cslab::to_string(q)).release();
    }
};

}  // namespace pybind11::detail

namespace {

using namespace cslab;

SubjectTrace make_trace(Natural horizon,
                        const std::vector<std::tuple<Natural, std::string, std::string>>& events) {
    std::vector<ScheduleEvent> evs;
    for (const auto& [stage, atom, kind] : events) {
        auto k = judgment_kind_from_string(kind);
        if (!k) throw std::invalid_argument("bad judgment kind '" + kind + "'");
        evs.push_back({stage, {atom, *k}});
    }
    auto v = validate_schedule(horizon, std::move(evs));
    if (!v.ok()) {
        std::string msg = "invalid schedule:";
        for (const auto& e : v.errors) msg += " " + e.detail + ";";
        throw std::invalid_argument(msg);
    }
    return SubjectTrace(std::move(*v.schedule));
}

std::vector<Rational> creal_prefix(const CReal& r, Natural n) {
    std::vector<Rational> out;
    for (Natural i = 0; i < n; ++i) out.push_back(r.at(i));
    return out;
}

py::dict verdict_dict(const Verdict& v) {
    py::dict d;
    d["status"] = v.established() ? "established" : v.refuted() ? "refuted" : "unknown";
    d["depth"] = v.depth;
    if (v.side) d["side"] = *v.side == ApartSide::Left ? "left" : "right";
    if (v.certificate) {
        py::dict cert;
        cert["index"] = v.certificate->index;
        cert["gap_exponent"] = v.certificate->gap_exponent;
        cert["witnessed_gap"] = py::cast(v.certificate->witnessed_gap);
        d["certificate"] = cert;
    }
    if (!v.witness_indices.empty()) d["witnesses"] = v.witness_indices;
    if (!v.note.empty()) d["note"] = v.note;
    return d;
}

py::tuple bounds_tuple(const Bounds& b) {
    return py::make_tuple(py::cast(b.lo), py::cast(b.hi), b.exact);
}

Drift drift_by_name(const std::string& name) {
    if (name == "dyadic_right") return Drift::dyadic_right();
    if (name == "dyadic_two_winged") return Drift::dyadic_two_winged();
    if (name == "sqrt2") return Drift::sqrt2_rational_counting();
    throw std::invalid_argument("unknown drift '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_cslab, m) {
    m.doc() = "exact-arithmetic laboratory for stage-indexed choice sequences";

    m.def("pair_index", &pair_index, py::arg("n"), py::arg("k"));
    m.def("unpair_index", &unpair_index, py::arg("p"));
    m.def("dyadic", &dyadic, py::arg("m"));

    py::class_<SubjectTrace>(m, "SubjectTrace")
        .def(py::init(&make_trace), py::arg("horizon"), py::arg("events"))
        .def_property_readonly("horizon", &SubjectTrace::horizon)
        .def("box",
             [](const SubjectTrace& t, Natural n, const std::string& atom, const std::string& kind) {
                 auto k = judgment_kind_from_string(kind);
                 if (!k) throw std::invalid_argument("bad judgment kind");
                 return t.box(n, {atom, *k});
             },
             py::arg("stage"), py::arg("atom"), py::arg("kind") = "affirm")
        .def("tested_by", &SubjectTrace::tested_by, py::arg("stage"), py::arg("atom"));

    py::class_<CReal>(m, "CReal")
        .def("at", &CReal::at, py::arg("index"))
        .def("approx", &CReal::approx, py::arg("precision"))
        .def("prefix", &creal_prefix, py::arg("count"))
        .def("enclosure",
             [](const CReal& r) {
                 auto [lo, hi] = r.best_enclosure();
                 return py::make_tuple(py::cast(lo), py::cast(hi));
             })
        .def_property_readonly("tag", &CReal::tag);

    m.def("constant", [](const Rational& v) { return CReal::constant(v); }, py::arg("value"));
    m.def("brouwer1948_r", &brouwer1948_r, py::arg("trace"), py::arg("atom"));
    m.def("brouwer1948_positive", &brouwer1948_positive, py::arg("trace"), py::arg("atom"));
    m.def("heyting_pair", &heyting_pair, py::arg("trace"), py::arg("atom"));
    m.def("dyadic_embed",
          [](const std::vector<Natural>& terms, Natural tail) {
              return dyadic_embed(
                  [terms, tail](Natural i) {
                      return i >= 1 && i <= terms.size() ? terms[i - 1] : tail;
                  },
                  "dyadic_embed");
          },
          py::arg("terms"), py::arg("tail") = 1);
    m.def("fleeing_sequence_1924",
          [](std::optional<Natural> critical, Natural horizon) {
              return fleeing_sequence_1924(critical ? FleeingProperty::with_critical(*critical)
                                                    : FleeingProperty::never(),
                                           horizon);
          },
          py::arg("critical"), py::arg("horizon"));
    m.def("direct_checking",
          [](const std::string& drift, const SubjectTrace& t, const std::string& atom) {
              return direct_checking(drift_by_name(drift), t, atom);
          },
          py::arg("drift"), py::arg("trace"), py::arg("atom"));
    m.def("conditional_checking",
          [](const std::string& drift, const SubjectTrace& t, const std::string& atom) {
              return conditional_checking(drift_by_name(drift), t, atom);
          },
          py::arg("drift"), py::arg("trace"), py::arg("atom"));
    m.def("two_sided_checking",
          [](const std::string& drift, const SubjectTrace& t, const std::string& atom) {
              return two_sided_checking(drift_by_name(drift), t, atom);
          },
          py::arg("drift"), py::arg("trace"), py::arg("atom"));
    m.def("drift_kernel",
          [](const std::string& drift) { return drift_by_name(drift).kernel; }, py::arg("drift"));

    m.def("measurably_less",
          [](const CReal& x, const CReal& y, Natural depth) {
              return verdict_dict(measurably_less(x, y, depth));
          },
          py::arg("x"), py::arg("y"), py::arg("depth"));
    m.def("apart",
          [](const CReal& x, const CReal& y, Natural depth) {
              return verdict_dict(apart(x, y, depth));
          },
          py::arg("x"), py::arg("y"), py::arg("depth"));
    m.def("coincide_up_to", &coincide_up_to, py::arg("x"), py::arg("y"), py::arg("precision"));

    m.def("omega", [](Natural nu, const Rational& x) { return bounds_tuple(omega(nu, x)); },
          py::arg("nu"), py::arg("x"));
    m.def("omega_sum",
          [](Natural nu_max, const Rational& x) { return bounds_tuple(omega_sum(nu_max, x)); },
          py::arg("nu_max"), py::arg("x"));
    m.def("z_eval",
          [](const SubjectTrace& t, const std::string& atom, const Rational& x, Natural depth) {
              return bounds_tuple(z_eval(t, atom, x, depth));
          },
          py::arg("trace"), py::arg("atom"), py::arg("x"), py::arg("depth"));
    m.def("tangency_search",
          [](Natural nu, const Rational& resolution) {
              Tangency t = tangency_search(nu, resolution);
              return py::make_tuple(py::cast(t.abscissa), bounds_tuple(t.slope));
          },
          py::arg("nu"), py::arg("resolution"));

    m.def("alpha_from_trace",
          [](const SubjectTrace& t, const std::string& atom, const std::string& kind) {
              auto k = judgment_kind_from_string(kind);
              if (!k) throw std::invalid_argument("bad judgment kind");
              return alpha_from_trace(t, {atom, *k}).values;
          },
          py::arg("trace"), py::arg("atom"), py::arg("kind") = "affirm");
    m.def("dedup", [](const std::vector<int>& values) {
        BinarySeq s;
        s.values = values;
        return dedup(s).values;
    });
    m.def("random_witness", &random_witness, py::arg("trace"), py::arg("atom"), py::arg("seed"));
    m.def("verify_bks_clauses",
          [](const std::vector<int>& values, const SubjectTrace& t, const std::string& atom,
             const std::string& kind) {
              auto k = judgment_kind_from_string(kind);
              if (!k) throw std::invalid_argument("bad judgment kind");
              BinarySeq s;
              s.values = values;
              ClauseReport r = verify_bks_clauses(s, t, {atom, *k});
              py::dict d;
              d["clause1"] = r.clause1;
              d["clause2_forward"] = r.clause2_forward;
              d["clause2_backward"] = r.clause2_backward;
              d["clause3"] = r.clause3;
              d["plus_reverse"] = r.plus_reverse;
              d["weak_ok"] = r.weak_ok();
              d["strong_ok"] = r.strong_ok();
              return d;
          },
          py::arg("values"), py::arg("trace"), py::arg("atom"), py::arg("kind") = "affirm");

    m.def("parse_formula", [](const std::string& text) { return print(parse(text)); },
          py::arg("text"));
    m.def("eval_trace",
          [](const SubjectTrace& t, const std::string& formula) {
              return eval_trace(t, parse(formula));
          },
          py::arg("trace"), py::arg("formula"));
    m.def("check_branching",
          [](const std::string& formula, Natural depth, bool actual_path) {
              BranchModel tree = BranchModel::evidence_tree(depth, "A");
              FormulaPtr f = parse(formula);
              GMode mode = actual_path ? GMode::ActualPath : GMode::AllBranches;
              bool root = eval_branching(tree, 0, f, mode);
              bool valid = true;
              for (Natural w = 0; w < tree.size(); ++w) valid &= forces(tree, w, f, mode);
              py::dict d;
              d["forced_at_root"] = root;
              d["valid"] = valid;
              d["worlds"] = tree.size();
              return d;
          },
          py::arg("formula"), py::arg("depth") = 4, py::arg("actual_path") = false);
    m.def("countermodel_search",
          [](const std::string& formula, Natural max_worlds) {
              auto r = countermodel_search(parse(formula), max_worlds);
              py::dict d;
              d["found"] = r.found;
              d["models_tried"] = r.models_tried;
              if (r.found) {
                  d["description"] = r.description;
                  d["world"] = r.world;
                  d["worlds"] = r.model.size();
              }
              return d;
          },
          py::arg("formula"), py::arg("max_worlds") = 1024);
    m.def("check_axiom_suite",
          [](Natural horizon, Natural atoms) {
              AxiomSuiteReport report = check_axiom_suite(horizon, atoms);
              py::list checks;
              for (const auto& c : report.checks) {
                  py::dict d;
                  d["name"] = c.name;
                  d["mode"] = c.mode;
                  d["expected_valid"] = c.expected_valid;
                  d["pass"] = c.pass;
                  checks.append(d);
              }
              py::dict out;
              out["checks"] = checks;
              out["schedules_swept"] = report.schedules_swept;
              out["all_pass"] = report.all_pass();
              return out;
          },
          py::arg("horizon") = 6, py::arg("atoms") = 1);

    m.def("run_scenario",
          [](const std::string& path) {
              ScenarioReport r = run_scenario(path);
              return py::make_tuple(r.exit_code, r.lines);
          },
          py::arg("path"));
    m.def("emit_omega_csv", &emit_omega_csv, py::arg("nu_max"), py::arg("samples"),
          py::arg("out_path"));

    py::register_exception<HorizonError>(m, "HorizonError");
    py::register_exception<StageError>(m, "StageError");
}
