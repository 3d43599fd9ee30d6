#include "cslab/scenario.hpp"

#include "cslab/bks.hpp"
#include "cslab/constructions.hpp"
#include "cslab/creal.hpp"
#include "cslab/logic.hpp"
#include "cslab/schedule.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace cslab {

namespace {

using nlohmann::json;

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

struct Context {
    Natural horizon = 1;
    std::uint64_t seed = 0;
    std::vector<std::string> atoms;
    std::optional<SubjectTrace> trace;
    std::map<std::string, CReal> reals;
    std::map<std::string, BinarySeq> binaries;
    std::map<std::string, std::vector<Natural>> naturals;
    std::map<std::string, std::function<Bounds(const Rational&)>> functions;

    const SubjectTrace& the_trace() const {
        if (!trace) throw SchemaError("scenario has no schedule");
        return *trace;
    }

    void require_atom(const std::string& a) const {
        for (const auto& x : atoms) {
            if (x == a) return;
        }
        throw SchemaError("undeclared atom '" + a + "'");
    }

    const CReal& real(const std::string& id) const {
        auto it = reals.find(id);
        if (it == reals.end()) throw SchemaError("unknown real '" + id + "'");
        return it->second;
    }

    const BinarySeq& binary(const std::string& id) const {
        auto it = binaries.find(id);
        if (it == binaries.end()) throw SchemaError("unknown binary sequence '" + id + "'");
        return it->second;
    }
};

Rational rat(const json& j) {
    if (j.is_number_integer()) return Rational(Int(j.get<long long>()), 1);
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    throw SchemaError("expected a rational literal");
}

JudgmentKind kind_of(const json& j) {
    auto k = judgment_kind_from_string(j.get<std::string>());
    if (!k) throw SchemaError("bad judgment kind '" + j.get<std::string>() + "'");
    return *k;
}

Drift drift_of(const std::string& name) {
    if (name == "dyadic_right") return Drift::dyadic_right();
    if (name == "dyadic_two_winged") return Drift::dyadic_two_winged();
    if (name == "sqrt2") return Drift::sqrt2_rational_counting();
    throw SchemaError("unknown drift '" + name + "'");
}

void build_construction(Context& ctx, const json& c) {
    std::string id = c.at("id").get<std::string>();
    std::string type = c.at("type").get<std::string>();
    json params = c.value("params", json::object());
    auto atom_param = [&]() {
        std::string a = params.at("atom").get<std::string>();
        ctx.require_atom(a);
        return a;
    };
    if (type == "constant") {
        ctx.reals.emplace(id, CReal::constant(rat(params.at("value")), id));
    } else if (type == "brouwer1948_r") {
        ctx.reals.emplace(id, brouwer1948_r(ctx.the_trace(), atom_param()));
    } else if (type == "brouwer1948_positive") {
        ctx.reals.emplace(id, brouwer1948_positive(ctx.the_trace(), atom_param()));
    } else if (type == "heyting_r" || type == "heyting_s") {
        auto [r, s] = heyting_pair(ctx.the_trace(), atom_param());
        ctx.reals.emplace(id, type == "heyting_r" ? r : s);
    } else if (type == "direct_checking" || type == "conditional_checking" ||
               type == "two_sided_checking") {
        Drift d = drift_of(params.at("drift").get<std::string>());
        std::string atom = atom_param();
        if (type == "direct_checking") ctx.reals.emplace(id, direct_checking(d, ctx.the_trace(), atom));
        else if (type == "conditional_checking")
            ctx.reals.emplace(id, conditional_checking(d, ctx.the_trace(), atom));
        else ctx.reals.emplace(id, two_sided_checking(d, ctx.the_trace(), atom));
    } else if (type == "kernel") {
        ctx.reals.emplace(id, drift_of(params.at("drift").get<std::string>()).kernel);
    } else if (type == "fleeing_1924") {
        FleeingProperty fp = params.contains("critical")
                                 ? FleeingProperty::with_critical(params.at("critical").get<Natural>())
                                 : FleeingProperty::never();
        ctx.reals.emplace(id, fleeing_sequence_1924(fp, params.value("horizon", ctx.horizon)));
    } else if (type == "dyadic_embed") {
        std::vector<Natural> terms = params.at("terms").get<std::vector<Natural>>();
        Natural tail = params.value("tail", Natural{1});
        ctx.reals.emplace(id, dyadic_embed(
                                  [terms, tail](Natural i) {
                                      return i >= 1 && i <= terms.size() ? terms[i - 1] : tail;
                                  },
                                  id));
    } else if (type == "negcont") {
        const CReal& base = ctx.real(params.at("base").get<std::string>());
        std::vector<CReal> family;
        for (const auto& fid : params.at("family")) family.push_back(ctx.real(fid.get<std::string>()));
        std::vector<AlignDecision> decisions;
        for (const auto& d : params.value("decisions", json::array())) {
            AlignDecision ad;
            ad.stage = d.at("stage").get<Natural>();
            if (d.contains("target") && !d.at("target").is_string()) {
                ad.target = d.at("target").get<Natural>();
            }
            decisions.push_back(ad);
        }
        ctx.reals.emplace(id, negcont_r_omega(base, family, decisions));
    } else if (type == "alpha") {
        Judgment target{params.at("atom").get<std::string>(), kind_of(params.at("kind"))};
        ctx.require_atom(target.atom);
        ctx.binaries.emplace(id, alpha_from_trace(ctx.the_trace(), target));
    } else if (type == "dedup") {
        ctx.binaries.emplace(id, dedup(ctx.binary(params.at("of").get<std::string>())));
    } else if (type == "zigzag") {
        std::vector<BinarySeq> family;
        for (const auto& fid : params.at("of")) family.push_back(ctx.binary(fid.get<std::string>()));
        ctx.binaries.emplace(id, zigzag_merge(family, params.at("length").get<Natural>()).beta);
    } else if (type == "random_witness") {
        ctx.naturals.emplace(id, random_witness(ctx.the_trace(), atom_param(), ctx.seed));
    } else if (type == "bks_plus") {
        Drift d = drift_of(params.at("drift").get<std::string>());
        std::string atom = atom_param();
        CReal c = conditional_checking(d, ctx.the_trace(), atom);
        auto freeze = ctx.the_trace().stage_of({atom, JudgmentKind::Affirm});
        Natural len = params.value("length", freeze ? ctx.horizon + 1 : ctx.horizon);
        std::vector<Rational> prefix;
        for (Natural i = 0; i < len; ++i) prefix.push_back(c.at(i));
        ctx.binaries.emplace(id, bks_plus_from_conditional(prefix, freeze));
    } else if (type == "omega_sum_fn") {
        Natural nu_max = params.value("nu_max", Natural{16});
        ctx.functions.emplace(id, [nu_max](const Rational& x) { return omega_sum(nu_max, x); });
    } else if (type == "z_fn") {
        std::string atom = atom_param();
        Natural depth = params.value("depth", ctx.horizon);
        SubjectTrace trace = ctx.the_trace();
        ctx.functions.emplace(id, [trace, atom, depth](const Rational& x) {
            return z_eval(trace, atom, x, depth);
        });
    } else {
        throw SchemaError("unknown construction type '" + type + "'");
    }
}

std::string verdict_word(const Verdict& v) {
    if (v.established()) {
        if (v.side) return *v.side == ApartSide::Left ? "established_left" : "established_right";
        return "established";
    }
    if (v.refuted()) return "refuted";
    return "unknown";
}

struct AssertionOutcome {
    bool pass;
    std::string detail;
};

AssertionOutcome check_assertion(Context& ctx, const json& a) {
    std::string kind = a.at("kind").get<std::string>();
    if (kind == "prefix") {
        const CReal& r = ctx.real(a.at("target").get<std::string>());
        Natural i = 0;
        for (const auto& e : a.at("expected")) {
            Rational want = rat(e);
            Rational got = r.at(i);
            if (got != want) {
                return {false, "index " + std::to_string(i) + ": got " + to_string(got) +
                                   ", want " + to_string(want)};
            }
            ++i;
        }
        return {true, std::to_string(i) + " values exact"};
    }
    if (kind == "apart" || kind == "measurably_less") {
        const CReal& x = ctx.real(a.at("a").get<std::string>());
        const CReal& y = ctx.real(a.at("b").get<std::string>());
        Natural depth = a.value("depth", ctx.horizon);
        Verdict v = kind == "apart" ? apart(x, y, depth) : measurably_less(x, y, depth);
        std::string got = verdict_word(v);
        if (kind == "measurably_less" && v.established()) got = "established";
        std::string want = a.at("expected").get<std::string>();
        return {got == want, got + " (" + to_string(v) + ")"};
    }
    if (kind == "coincide") {
        const CReal& x = ctx.real(a.at("a").get<std::string>());
        const CReal& y = ctx.real(a.at("b").get<std::string>());
        bool got = coincide_up_to(x, y, a.at("precision").get<unsigned>());
        bool want = a.at("expected").get<bool>();
        return {got == want, got ? "coincide at precision" : "distinguishable"};
    }
    if (kind == "limit_within") {
        const CReal& r = ctx.real(a.at("target").get<std::string>());
        Rational band = rat(a.at("band"));
        Rational center = a.contains("center") ? rat(a.at("center")) : Rational(0);
        auto [lo, hi] = r.best_enclosure();
        bool got = lo >= center - band && hi <= center + band;
        bool want = a.at("expected").get<bool>();
        return {got == want, "enclosure [" + to_string(lo) + ", " + to_string(hi) + "]"};
    }
    if (kind == "hypothesis") {
        std::string rel = a.at("relation").get<std::string>();
        NegativeRelation nr = rel == "coincide" ? NegativeRelation::Coincide
                              : rel == "leq"    ? NegativeRelation::VirtualLeq
                                                : NegativeRelation::VirtualLess;
        Verdict v = check_negative_hypothesis(nr, ctx.real(a.at("a").get<std::string>()),
                                              ctx.real(a.at("b").get<std::string>()),
                                              a.value("depth", ctx.horizon));
        std::string got = verdict_word(v);
        return {got == a.at("expected").get<std::string>(), to_string(v)};
    }
    if (kind == "eval") {
        const auto& fn = ctx.functions.at(a.at("fn").get<std::string>());
        Bounds got = fn(rat(a.at("x")));
        Rational want = rat(a.at("expected"));
        Rational tol = a.contains("tol") ? rat(a.at("tol")) : Rational(0);
        bool pass = got.exact && tol == 0 ? got.lo == want
                                          : abs(got.mid() - want) <= tol + got.width();
        return {pass, "value in [" + to_string(got.lo) + ", " + to_string(got.hi) + "]"};
    }
    if (kind == "dq") {
        const auto& fn = ctx.functions.at(a.at("fn").get<std::string>());
        Bounds got = difference_quotient(fn, rat(a.at("a")), rat(a.at("b")));
        Rational want = rat(a.at("expected"));
        Rational tol = rat(a.at("tol"));
        return {abs(got.mid() - want) <= tol + got.width(),
                "quotient in [" + to_string(got.lo) + ", " + to_string(got.hi) + "]"};
    }
    if (kind == "tangency") {
        Tangency t = tangency_search(a.at("nu").get<Natural>(), rat(a.at("resolution")));
        Rational tol = rat(a.at("tol"));
        bool x_ok = abs(t.abscissa - rat(a.at("x_expected"))) <= tol;
        bool s_ok = abs(t.slope.mid() - rat(a.at("slope_expected"))) <= tol + t.slope.width();
        return {x_ok && s_ok,
                "x*=" + to_string(t.abscissa) + ", slope~" + to_decimal(t.slope.mid(), 9)};
    }
    if (kind == "equals") {
        const CReal& x = ctx.real(a.at("a").get<std::string>());
        const CReal& y = ctx.real(a.at("b").get<std::string>());
        Natural upto = a.at("upto").get<Natural>();
        for (Natural i = 0; i < upto; ++i) {
            if (x.at(i) != y.at(i)) return {false, "differ at index " + std::to_string(i)};
        }
        return {true, "equal on " + std::to_string(upto) + " indices"};
    }
    if (kind == "binary_prefix") {
        const BinarySeq& s = ctx.binary(a.at("target").get<std::string>());
        Natural i = 0;
        for (const auto& e : a.at("expected")) {
            if (s.at(i) != e.get<int>()) return {false, "differ at index " + std::to_string(i)};
            ++i;
        }
        return {true, "prefix matches"};
    }
    if (kind == "nat_zero_until") {
        const auto& s = ctx.naturals.at(a.at("target").get<std::string>());
        Natural split = a.at("index").get<Natural>();
        for (Natural i = 0; i < s.size(); ++i) {
            bool want_zero = i < split;
            if (want_zero && s[i] != 0) return {false, "nonzero before the event"};
            if (!want_zero && (s[i] == 0 || s[i] != s[split])) {
                return {false, "witness not held constant"};
            }
        }
        Natural held = split < s.size() ? s[split] : 0;
        return {true, "held value " + std::to_string(held)};
    }
    if (kind == "clauses") {
        const BinarySeq& s = ctx.binary(a.at("target").get<std::string>());
        Judgment target{a.at("atom").get<std::string>(), kind_of(a.at("kind_target"))};
        ClauseReport r = verify_bks_clauses(s, ctx.the_trace(), target);
        bool strong = a.value("strong", false);
        bool got = strong ? r.strong_ok() : r.weak_ok();
        return {got == a.at("expected").get<bool>(),
                std::string("clauses ") + (got ? "hold" : "fail") + " (" + r.notes + ")"};
    }
    if (kind == "clauses_equal") {
        const BinarySeq& x = ctx.binary(a.at("a").get<std::string>());
        const BinarySeq& y = ctx.binary(a.at("b").get<std::string>());
        Judgment target{a.at("atom").get<std::string>(), kind_of(a.at("kind_target"))};
        ClauseReport rx = verify_bks_clauses(x, ctx.the_trace(), target);
        ClauseReport ry = verify_bks_clauses(y, ctx.the_trace(), target);
        return {rx == ry, rx == ry ? "reports identical" : "reports diverge"};
    }
    if (kind == "wednesday") {
        const BinarySeq& s = ctx.binary(a.at("target").get<std::string>());
        std::string tname = a.at("t").get<std::string>();
        std::function<Natural(Natural)> t;
        if (tname == "even") t = [](Natural x) { return 2 * x; };
        else if (tname == "odd") t = [](Natural x) { return 2 * x + 1; };
        else throw SchemaError("unknown term '" + tname + "'");
        Judgment target{a.at("atom").get<std::string>(), kind_of(a.at("kind_target"))};
        Verdict v = wednesday_check(s, t, ctx.the_trace(), target,
                                    a.value("asserted_never", false));
        return {verdict_word(v) == a.at("expected").get<std::string>(), to_string(v)};
    }
    if (kind == "enumerator") {
        std::vector<Natural> fixture = a.at("fixture").get<std::vector<Natural>>();
        std::string variant = a.value("variant", "cs");
        Enumerator e = variant == "cs" ? cs_enumerate(ctx.the_trace(), fixture)
                                       : species_enumerator(ctx.the_trace(),
                                                            a.value("inhabitant", Natural{0}));
        bool got = enumerator_biconditional(e, fixture, a.value("probe", Natural{20}));
        return {got == a.at("expected").get<bool>(), got ? "biconditional exact" : "mismatch"};
    }
    if (kind == "converges_positively" || kind == "negative_convergence") {
        std::vector<CReal> seq;
        for (const auto& e : a.at("seq")) seq.push_back(CReal::constant(rat(e)));
        CReal limit = CReal::constant(rat(a.at("limit")));
        Natural p = a.at("p").get<Natural>();
        Natural depth = a.value("depth", ctx.horizon);
        Verdict v = kind == "converges_positively"
                        ? converges_positively(seq, limit, p, depth)
                        : negative_convergence_check(seq, limit, p, depth);
        std::string got = v.established() ? "established" : v.refuted() ? "refuted" : "unknown";
        bool pass = got == a.at("expected").get<std::string>();
        if (pass && a.contains("n")) pass = v.depth == a.at("n").get<Natural>();
        if (pass && a.contains("note")) pass = v.note == a.at("note").get<std::string>();
        return {pass, to_string(v)};
    }
    if (kind == "drift_valid") {
        Drift d = drift_of(a.at("drift").get<std::string>());
        auto failures = d.validate(a.value("upto", Natural{4}), a.value("depth", Natural{16}));
        return {failures.empty() == a.at("expected").get<bool>(),
                failures.empty() ? "drift axioms certified" : failures.front()};
    }
    throw SchemaError("unknown assertion kind '" + kind + "'");
}

AssertionOutcome check_logic(Context& ctx, const json& item) {
    FormulaPtr f = parse(item.at("formula").get<std::string>());
    std::string mode = item.at("mode").get<std::string>();
    if (mode == "trace") {
        if (item.at("expect").is_boolean()) {
            bool got = eval_trace(ctx.the_trace(), f);
            return {got == item.at("expect").get<bool>(), got ? "true on trace" : "false on trace"};
        }
        // "valid": true on every schedule of the sweep at this horizon
        bool want_valid = item.at("expect").get<std::string>() == "valid";
        auto atoms = atoms_of(f);
        std::string sweep_atom = atoms.empty() ? "A" : *atoms.begin();
        for (const auto& sched : sweep_schedules_one_atom(ctx.horizon, sweep_atom)) {
            if (!eval_trace(SubjectTrace(sched), f)) {
                return {!want_valid, "falsified by a schedule"};
            }
        }
        return {want_valid, "true on every schedule"};
    }
    if (mode == "branching") {
        Natural depth = item.value("depth", std::min<Natural>(ctx.horizon, 4));
        auto atoms = atoms_of(f);
        BranchModel tree = BranchModel::evidence_tree(depth, atoms.empty() ? "A" : *atoms.begin());
        std::string expect = item.at("expect").get<std::string>();
        if (expect == "forced" || expect == "not_forced") {
            bool got = eval_branching(tree, 0, f);
            return {got == (expect == "forced"), got ? "forced at root" : "not forced at root"};
        }
        bool valid = true;
        for (Natural w = 0; w < tree.size(); ++w) valid &= forces(tree, w, f);
        if (expect == "valid") return {valid, valid ? "forced at every world" : "not valid"};
        if (expect == "countermodel") return {!valid, !valid ? "counterworld found" : "valid"};
        throw SchemaError("bad branching expectation '" + expect + "'");
    }
    if (mode == "search") {
        auto r = countermodel_search(f, item.value("max_worlds", Natural{1024}));
        std::string expect = item.at("expect").get<std::string>();
        std::string got = r.found ? "found" : "exhausted";
        return {got == expect,
                r.found ? r.description + ", world " + std::to_string(r.world)
                        : "exhausted after " + std::to_string(r.models_tried) + " models"};
    }
    throw SchemaError("unknown logic mode '" + mode + "'");
}

ScenarioReport run_parsed(const json& doc, const std::string& name) {
    ScenarioReport report;
    report.name = name;
    if (!doc.contains("version") || doc.at("version").get<int>() != 1) {
        throw SchemaError("unsupported scenario version");
    }
    Context ctx;
    ctx.horizon = doc.at("horizon").get<Natural>();
    ctx.seed = doc.value("seed", std::uint64_t{0});
    for (const auto& a : doc.value("atoms", json::array())) ctx.atoms.push_back(a.get<std::string>());
    std::vector<ScheduleEvent> events;
    for (const auto& e : doc.value("events", json::array())) {
        std::string atom = e.at("atom").get<std::string>();
        ctx.require_atom(atom);
        events.push_back({e.at("stage").get<Natural>(), {atom, kind_of(e.at("kind"))}});
    }
    auto validation = validate_schedule(ctx.horizon, events);
    if (!validation.ok()) {
        std::string detail;
        for (const auto& err : validation.errors) detail += err.detail + "; ";
        throw SchemaError("invalid schedule: " + detail);
    }
    ctx.trace.emplace(std::move(*validation.schedule));
    for (const auto& c : doc.value("constructions", json::array())) build_construction(ctx, c);

    bool failed = false;
    auto record = [&](const std::string& label, const AssertionOutcome& out) {
        report.lines.push_back((out.pass ? "PASS  " : "FAIL  ") + label + " -- " + out.detail);
        failed |= !out.pass;
    };
    Natural index = 0;
    for (const auto& a : doc.value("assertions", json::array())) {
        std::string label = "assertion " + std::to_string(index++) + " (" +
                            a.at("kind").get<std::string>() + ")";
        try {
            record(label, check_assertion(ctx, a));
        } catch (const HorizonError& e) {
            bool expected = a.value("expected", json{}) == json("horizon_exhausted");
            record(label, {expected, std::string("HorizonExhausted: ") + e.what()});
        } catch (const SchemaError&) {
            throw;
        } catch (const std::exception& e) {
            record(label, {false, std::string("error: ") + e.what()});
        }
    }
    index = 0;
    for (const auto& l : doc.value("logic", json::array())) {
        std::string label = "logic " + std::to_string(index++) + " (" +
                            l.at("formula").get<std::string>() + ")";
        try {
            record(label, check_logic(ctx, l));
        } catch (const SchemaError&) {
            throw;
        } catch (const std::exception& e) {
            record(label, {false, std::string("error: ") + e.what()});
        }
    }
    report.exit_code = failed ? 1 : 0;
    return report;
}

}  // namespace

ScenarioReport run_scenario_text(const std::string& json_text, const std::string& name) {
    ScenarioReport report;
    report.name = name;
    try {
        json doc = json::parse(json_text);
        return run_parsed(doc, name);
    } catch (const SchemaError& e) {
        report.exit_code = 2;
        report.lines.push_back(std::string("SCHEMA  ") + e.what());
    } catch (const json::exception& e) {
        report.exit_code = 2;
        report.lines.push_back(std::string("SCHEMA  ") + e.what());
    } catch (const std::exception& e) {
        report.exit_code = 2;
        report.lines.push_back(std::string("SCHEMA  ") + e.what());
    }
    return report;
}

ScenarioReport run_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ScenarioReport report;
        report.name = path;
        report.exit_code = 2;
        report.lines.push_back("SCHEMA  cannot open " + path);
        return report;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return run_scenario_text(buf.str(), path);
}

void write_report(std::ostream& os, const ScenarioReport& report) {
    os << "scenario: " << report.name << "\n";
    for (const auto& line : report.lines) os << "  " << line << "\n";
    os << (report.exit_code == 0 ? "RESULT pass" : report.exit_code == 1 ? "RESULT fail"
                                                                         : "RESULT schema-error")
       << "\n";
}

void emit_omega_csv(Natural nu_max, Natural samples, const std::string& out_path) {
    if (nu_max < 1 || nu_max > 16) throw std::invalid_argument("nu_max must be in 1..16");
    if (samples < 1 || samples > 1000000) throw std::invalid_argument("samples must be in 1..10^6");
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("IoError: cannot open " + out_path);
    Rational slope = sqrt_bounds(Rational(2), 60).mid() / 4;
    long s = static_cast<long>(samples);
    os << "x,sum_omega,tangent_pos,tangent_neg\n";
    for (long i = -s; i <= s; ++i) {
        Rational x{Int(i), Int(s)};
        Bounds w = omega_sum(nu_max, x);
        Rational mid = w.exact ? w.lo : w.mid();
        os << to_decimal(x, 12) << ',' << to_decimal(mid, 12) << ',' << to_decimal(slope * x, 12)
           << ',' << to_decimal(-slope * x, 12) << '\n';
    }
    if (!os.good()) throw std::runtime_error("IoError: write failed for " + out_path);
}

}  // namespace cslab
