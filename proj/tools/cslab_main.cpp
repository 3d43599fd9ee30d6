#include "cslab/bks.hpp"
#include "cslab/constructions.hpp"
#include "cslab/creal.hpp"
#include "cslab/logic.hpp"
#include "cslab/scenario.hpp"
#include "cslab/schedule.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace cslab;

int cmd_run(const std::string& path) {
    ScenarioReport report = run_scenario(path);
    write_report(std::cout, report);
    return report.exit_code;
}

int cmd_omega_csv(Natural nu_max, Natural samples, const std::string& out) {
    try {
        emit_omega_csv(nu_max, samples, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_logic_check(const std::string& formula_text, const std::string& mode, Natural horizon,
                    bool actual_path) {
    FormulaPtr f;
    try {
        f = parse(formula_text);
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return 2;
    }
    if (mode == "trace") {
        auto atoms = atoms_of(f);
        std::string atom = atoms.empty() ? "A" : *atoms.begin();
        if (atoms.size() > 1) {
            std::cerr << "trace sweeps support one atom\n";
            return 2;
        }
        try {
            for (const auto& sched : sweep_schedules_one_atom(horizon, atom)) {
                SubjectTrace trace(sched);
                if (!eval_trace(trace, f)) {
                    std::cout << "not valid: falsified by a schedule with";
                    for (const auto& ev : sched.events) {
                        std::cout << " " << to_string(ev.judgment.kind) << "@" << ev.stage;
                    }
                    if (sched.events.empty()) std::cout << " no events";
                    std::cout << "\n";
                    return 1;
                }
            }
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        std::cout << "valid on every 1-atom schedule at horizon " << horizon << "\n";
        return 0;
    }
    if (mode == "branching") {
        auto atoms = atoms_of(f);
        BranchModel tree = BranchModel::evidence_tree(std::min<Natural>(horizon, 6),
                                                      atoms.empty() ? "A" : *atoms.begin());
        GMode g = actual_path ? GMode::ActualPath : GMode::AllBranches;
        try {
            bool forced = eval_branching(tree, 0, f, g);
            std::cout << (forced ? "forced" : "not forced") << " at the root of the depth-"
                      << tree.depth() << " evidence tree (" << tree.size() << " worlds)\n";
            return forced ? 0 : 1;
        } catch (const DepthExceeded& e) {
            std::cerr << "depth exceeded: " << e.what() << "\n";
            return 2;
        }
    }
    std::cerr << "mode must be trace or branching\n";
    return 2;
}

int cmd_logic_countermodel(const std::string& formula_text, Natural max_worlds) {
    FormulaPtr f;
    try {
        f = parse(formula_text);
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return 2;
    }
    CountermodelResult r = countermodel_search(f, max_worlds);
    if (!r.found) {
        std::cout << "Exhausted: no countermodel within " << max_worlds << " worlds ("
                  << r.models_tried << " models tried)\n";
        return 1;
    }
    std::cout << "countermodel: " << r.description << ", " << r.model.size()
              << " worlds, falsified at world " << r.world << " (depth "
              << r.model.world(r.world).depth << ")\n";
    return 0;
}

void repl_show(Session& session, const std::string& what, const std::string& atom) {
    SubjectTrace trace = session.trace();
    auto print_prefix = [&](const CReal& r) {
        Natural shown = trace.horizon();
        bool open_future = !r.constant_from().has_value();
        std::cout << r.tag() << ": (";
        for (Natural i = 0; i < shown; ++i) {
            if (open_future && i >= session.current_stage()) {
                std::cout << (i ? ", " : "") << "?";
            } else {
                std::cout << (i ? ", " : "") << to_string(r.at(i));
            }
        }
        std::cout << (open_future ? ", ...)" : ", frozen)") << "\n";
    };
    if (what == "r1948") print_prefix(brouwer1948_r(trace, atom));
    else if (what == "r1948pos") print_prefix(brouwer1948_positive(trace, atom));
    else if (what == "heyting_r") print_prefix(heyting_pair(trace, atom).first);
    else if (what == "heyting_s") print_prefix(heyting_pair(trace, atom).second);
    else if (what == "alpha") {
        BinarySeq a = alpha_from_trace(trace, {atom, JudgmentKind::Affirm});
        std::cout << "alpha: (";
        for (Natural i = 0; i < a.size(); ++i) {
            if (i >= session.current_stage() && !a.first_one()) std::cout << (i ? ", ?" : "?");
            else std::cout << (i ? ", " : "") << a.values[i];
        }
        std::cout << ")\n";
    } else {
        std::cout << "constructions: r1948 r1948pos heyting_r heyting_s alpha\n";
    }
}

CReal repl_real(Session& session, const std::string& name, const std::string& atom) {
    SubjectTrace trace = session.trace();
    if (name == "0" || name == "zero") return CReal::constant(0, "0");
    if (name == "r1948") return brouwer1948_r(trace, atom);
    if (name == "r1948pos") return brouwer1948_positive(trace, atom);
    if (name == "heyting_r") return heyting_pair(trace, atom).first;
    if (name == "heyting_s") return heyting_pair(trace, atom).second;
    throw std::invalid_argument("unknown real '" + name + "'");
}

int cmd_repl() {
    Natural horizon = 16;
    Session session(horizon);
    std::cout << "stage-stepper; horizon " << horizon
              << "; commands: advance | inject <atom> <affirm|refute|doubleneg> | "
                 "show <construction> [atom] | verdict apart <a> <b> [atom] | quit\n";
    std::string line;
    while (std::cout << "[stage " << session.current_stage() << "] " && std::getline(std::cin, line)) {
        std::istringstream is(line);
        std::string cmd;
        is >> cmd;
        if (cmd.empty()) continue;
        try {
            if (cmd == "quit" || cmd == "exit") break;
            if (cmd == "advance") {
                if (session.advance()) std::cout << "at stage " << session.current_stage() << "\n";
                else std::cout << "horizon reached\n";
            } else if (cmd == "inject") {
                std::string atom, kind;
                is >> atom >> kind;
                auto k = judgment_kind_from_string(kind);
                if (atom.empty() || !k) {
                    std::cout << "usage: inject <atom> <affirm|refute|doubleneg>\n";
                    continue;
                }
                auto errors = session.inject({atom, *k});
                if (errors.empty()) {
                    std::cout << "recorded " << kind << " " << atom << " at stage "
                              << session.current_stage() + 1 << "\n";
                } else {
                    for (const auto& e : errors) std::cout << "rejected: " << e.detail << "\n";
                }
            } else if (cmd == "show") {
                std::string what, atom;
                is >> what >> atom;
                repl_show(session, what, atom.empty() ? "A" : atom);
            } else if (cmd == "verdict") {
                std::string rel, a, b, atom;
                is >> rel >> a >> b >> atom;
                if (atom.empty()) atom = "A";
                if (rel != "apart" && rel != "less") {
                    std::cout << "relations: apart | less\n";
                    continue;
                }
                CReal x = repl_real(session, a, atom);
                CReal y = repl_real(session, b, atom);
                // open-future sequences may only be inspected up to the
                // current stage; settled tails allow the full horizon
                Natural depth = !x.available() && !y.available()
                                    ? session.horizon()
                                    : std::max<Natural>(session.current_stage(), 1);
                Verdict v = rel == "apart" ? apart(x, y, depth) : measurably_less(x, y, depth);
                std::cout << to_string(v) << "\n";
            } else {
                std::cout << "commands: advance inject show verdict quit\n";
            }
        } catch (const std::exception& e) {
            std::cout << "error: " << e.what() << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale laboratory for Creating Subject constructions"};
    app.require_subcommand(1);

    std::string scenario_path;
    auto* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("file", scenario_path, "scenario JSON")->required();

    Natural nu_max = 4;
    Natural samples = 64;
    std::string csv_out = "omega.csv";
    auto* csv = app.add_subcommand("omega-csv", "emit the omega-family figure data");
    csv->add_option("--nu-max", nu_max, "largest nu");
    csv->add_option("--samples", samples, "samples per unit");
    csv->add_option("--out", csv_out, "output path")->required();

    auto* repl = app.add_subcommand("repl", "interactive stage-stepper");

    auto* logic = app.add_subcommand("logic", "formula checks");
    logic->require_subcommand(1);
    std::string formula, mode = "trace";
    Natural horizon = 6;
    Natural max_worlds = 1024;
    bool actual_path = false;
    auto* check = logic->add_subcommand("check", "evaluate over trace sweeps or evidence trees");
    check->add_option("formula", formula, "formula text")->required();
    check->add_option("--mode", mode, "trace | branching");
    check->add_option("--horizon", horizon, "sweep horizon / tree depth");
    check->add_flag("--actual-path", actual_path, "designated-path G semantics");
    auto* counter = logic->add_subcommand("countermodel", "bounded countermodel search");
    counter->add_option("formula", formula, "formula text")->required();
    counter->add_option("--max-worlds", max_worlds, "world budget (<= 1024)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int ec = app.exit(e);
        return ec == 0 ? 0 : 2;
    }

    if (run->parsed()) return cmd_run(scenario_path);
    if (csv->parsed()) return cmd_omega_csv(nu_max, samples, csv_out);
    if (repl->parsed()) return cmd_repl();
    if (check->parsed()) return cmd_logic_check(formula, mode, horizon, actual_path);
    if (counter->parsed()) return cmd_logic_countermodel(formula, max_worlds);
    return 2;
}
