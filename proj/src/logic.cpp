#include "cslab/logic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace cslab {

FormulaPtr mk_atom(std::string name) {
    auto f = std::make_shared<Formula>();
    f->op = Formula::Op::Atom;
    f->atom = std::move(name);
    return f;
}

FormulaPtr mk_false() {
    auto f = std::make_shared<Formula>();
    f->op = Formula::Op::False;
    return f;
}

namespace {

FormulaPtr mk_unary(Formula::Op op, Natural stage, FormulaPtr a) {
    auto f = std::make_shared<Formula>();
    f->op = op;
    f->stage = stage;
    f->lhs = std::move(a);
    return f;
}

FormulaPtr mk_binary(Formula::Op op, FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->op = op;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}

}  // namespace

FormulaPtr mk_not(FormulaPtr a) { return mk_unary(Formula::Op::Not, 0, std::move(a)); }
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) { return mk_binary(Formula::Op::And, std::move(a), std::move(b)); }
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) { return mk_binary(Formula::Op::Or, std::move(a), std::move(b)); }
FormulaPtr mk_imp(FormulaPtr a, FormulaPtr b) { return mk_binary(Formula::Op::Imp, std::move(a), std::move(b)); }
FormulaPtr mk_box(Natural n, FormulaPtr a) { return mk_unary(Formula::Op::Box, n, std::move(a)); }
FormulaPtr mk_future(Natural n, FormulaPtr a) { return mk_unary(Formula::Op::Future, n, std::move(a)); }

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->op != b->op || a->atom != b->atom || a->stage != b->stage) return false;
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

std::set<std::string> atoms_of(const FormulaPtr& f) {
    std::set<std::string> out;
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
        if (!g) return;
        if (g->op == Formula::Op::Atom) out.insert(g->atom);
        walk(g->lhs);
        walk(g->rhs);
    };
    walk(f);
    return out;
}

Natural max_box_stage(const FormulaPtr& f) {
    if (!f) return 0;
    Natural m = std::max(max_box_stage(f->lhs), max_box_stage(f->rhs));
    if (f->op == Formula::Op::Box) m = std::max(m, f->stage);
    return m;
}

Natural future_depth(const FormulaPtr& f) {
    if (!f) return 0;
    Natural m = std::max(future_depth(f->lhs), future_depth(f->rhs));
    if (f->op == Formula::Op::Future) m = f->stage + future_depth(f->lhs);
    return m;
}

// --- parser ---------------------------------------------------------------

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) throw SyntaxError(pos, std::string("expected '") + c + "'");
    }

    bool eat_arrow() {
        skip_ws();
        if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>') {
            pos += 2;
            return true;
        }
        return false;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                         text[pos] == '_')) {
                ++pos;
            }
        }
        return text.substr(start, pos - start);
    }

    Natural nat() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw SyntaxError(pos, "expected a stage literal");
        return std::stoull(text.substr(start, pos - start));
    }

    FormulaPtr formula() { return imp(); }

    FormulaPtr imp() {
        FormulaPtr left = disj();
        if (eat_arrow()) return mk_imp(std::move(left), imp());
        return left;
    }

    FormulaPtr disj() {
        FormulaPtr f = conj();
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '|') {
                ++pos;
                f = mk_or(std::move(f), conj());
            } else {
                break;
            }
        }
        return f;
    }

    FormulaPtr conj() {
        FormulaPtr f = unary();
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '&') {
                ++pos;
                f = mk_and(std::move(f), unary());
            } else {
                break;
            }
        }
        return f;
    }

    FormulaPtr stage_operator(bool box) {
        expect('[');
        Natural n = nat();
        expect(']');
        expect('(');
        FormulaPtr body = formula();
        expect(')');
        return box ? mk_box(n, std::move(body)) : mk_future(n, std::move(body));
    }

    FormulaPtr unary() {
        skip_ws();
        if (pos >= text.size()) throw SyntaxError(pos, "unexpected end of formula");
        char c = text[pos];
        if (c == '~') {
            ++pos;
            return mk_not(unary());
        }
        if (c == '(') {
            ++pos;
            FormulaPtr f = formula();
            expect(')');
            return f;
        }
        std::string name = ident();
        if (name.empty()) throw SyntaxError(pos, "expected an atom or operator");
        if (name == "false") return mk_false();
        if (name == "box" || name == "G") {
            skip_ws();
            if (pos < text.size() && text[pos] == '[') return stage_operator(name == "box");
            // otherwise a plain atom that happens to spell an operator
        }
        return mk_atom(name);
    }
};

int precedence(Formula::Op op) {
    switch (op) {
        case Formula::Op::Imp: return 1;
        case Formula::Op::Or: return 2;
        case Formula::Op::And: return 3;
        default: return 4;
    }
}

void print_into(const FormulaPtr& f, std::string& out, int context) {
    int prec = precedence(f->op);
    bool parens = prec < context;
    if (parens) out += "(";
    switch (f->op) {
        case Formula::Op::Atom: out += f->atom; break;
        case Formula::Op::False: out += "false"; break;
        case Formula::Op::Not:
            out += "~";
            print_into(f->lhs, out, 4);
            break;
        case Formula::Op::And:
            print_into(f->lhs, out, 3);
            out += " & ";
            print_into(f->rhs, out, 4);
            break;
        case Formula::Op::Or:
            print_into(f->lhs, out, 2);
            out += " | ";
            print_into(f->rhs, out, 3);
            break;
        case Formula::Op::Imp:
            print_into(f->lhs, out, 2);
            out += " -> ";
            print_into(f->rhs, out, 1);
            break;
        case Formula::Op::Box:
        case Formula::Op::Future:
            out += f->op == Formula::Op::Box ? "box[" : "G[";
            out += std::to_string(f->stage);
            out += "](";
            print_into(f->lhs, out, 1);
            out += ")";
            break;
    }
    if (parens) out += ")";
}

}  // namespace

FormulaPtr parse(const std::string& text) {
    Parser p{text};
    FormulaPtr f = p.formula();
    p.skip_ws();
    if (p.pos != text.size()) throw SyntaxError(p.pos, "trailing input");
    return f;
}

std::string print(const FormulaPtr& f) {
    std::string out;
    print_into(f, out, 0);
    return out;
}

// --- trace semantics --------------------------------------------------------

namespace {

/// box[n] bodies that the schedule makes directly decidable: an atom reads
/// the Affirm table, ~atom the Refute table, ~~atom the DoubleNeg table.
std::optional<Judgment> box_body_judgment(const FormulaPtr& body) {
    if (body->op == Formula::Op::Atom) return Judgment{body->atom, JudgmentKind::Affirm};
    if (body->op == Formula::Op::Not) {
        const FormulaPtr& inner = body->lhs;
        if (inner->op == Formula::Op::Atom) return Judgment{inner->atom, JudgmentKind::Refute};
        if (inner->op == Formula::Op::Not && inner->lhs->op == Formula::Op::Atom) {
            return Judgment{inner->lhs->atom, JudgmentKind::DoubleNeg};
        }
    }
    return std::nullopt;
}

}  // namespace

bool eval_trace(const SubjectTrace& trace, const FormulaPtr& f) {
    switch (f->op) {
        case Formula::Op::Atom:
            // over a completed history an atom is settled iff affirmed somewhere
            return trace.stage_of({f->atom, JudgmentKind::Affirm}).has_value();
        case Formula::Op::False: return false;
        case Formula::Op::Not: return !eval_trace(trace, f->lhs);
        case Formula::Op::And: return eval_trace(trace, f->lhs) && eval_trace(trace, f->rhs);
        case Formula::Op::Or: return eval_trace(trace, f->lhs) || eval_trace(trace, f->rhs);
        case Formula::Op::Imp: return !eval_trace(trace, f->lhs) || eval_trace(trace, f->rhs);
        case Formula::Op::Box: {
            auto j = box_body_judgment(f->lhs);
            if (!j) throw std::invalid_argument("box of a compound formula is not trace-decidable");
            return trace.box(f->stage, *j);
        }
        case Formula::Op::Future:
            // the future operator is transparent over a fixed complete schedule
            if (f->stage > trace.horizon()) {
                throw StageError("G stage " + std::to_string(f->stage) + " beyond horizon");
            }
            return eval_trace(trace, f->lhs);
    }
    return false;
}

// --- branching models -------------------------------------------------------

Natural BranchModel::add_root() {
    worlds_.push_back(World{});
    return worlds_.size() - 1;
}

Natural BranchModel::add_child(Natural parent, std::set<std::string> atoms) {
    World w;
    w.parent = parent;
    w.depth = worlds_.at(parent).depth + 1;
    const auto& inherited = worlds_.at(parent).atoms;
    w.atoms = inherited;
    w.atoms.insert(atoms.begin(), atoms.end());
    worlds_.push_back(std::move(w));
    Natural id = worlds_.size() - 1;
    worlds_[parent].children.push_back(id);
    depth_ = std::max(depth_, worlds_[id].depth);
    return id;
}

bool BranchModel::monotone_valuation() const {
    for (Natural w = 0; w < worlds_.size(); ++w) {
        const World& ww = worlds_[w];
        if (ww.parent == npos) continue;
        const auto& up = worlds_[ww.parent].atoms;
        if (!std::includes(ww.atoms.begin(), ww.atoms.end(), up.begin(), up.end())) return false;
    }
    return true;
}

BranchModel BranchModel::evidence_tree(Natural depth, const std::string& atom) {
    BranchModel m;
    Natural root = m.add_root();
    std::vector<std::pair<Natural, bool>> frontier{{root, false}};  // world, atom proved
    for (Natural d = 0; d < depth; ++d) {
        std::vector<std::pair<Natural, bool>> next;
        for (auto [w, proved] : frontier) {
            if (proved) {
                next.push_back({m.add_child(w, {}), true});
            } else {
                next.push_back({m.add_child(w, {}), false});
                next.push_back({m.add_child(w, {atom}), true});
            }
        }
        frontier = std::move(next);
    }
    return m;
}

BranchModel BranchModel::evidence_tree2(Natural depth, const std::string& a,
                                        const std::string& b) {
    BranchModel m;
    Natural root = m.add_root();
    std::vector<Natural> frontier{root};
    for (Natural d = 0; d < depth; ++d) {
        std::vector<Natural> next;
        for (Natural w : frontier) {
            const auto& have = m.world(w).atoms;
            std::vector<std::set<std::string>> extensions{{}};
            if (!have.count(a)) extensions.push_back({a});
            if (!have.count(b)) extensions.push_back({b});
            if (!have.count(a) && !have.count(b)) extensions.push_back({a, b});
            for (auto& ext : extensions) next.push_back(m.add_child(w, ext));
        }
        frontier = std::move(next);
    }
    return m;
}

BranchModel BranchModel::chain(Natural length, std::optional<Natural> event_stage,
                               const std::string& atom) {
    BranchModel m;
    Natural w = m.add_root();
    for (Natural d = 1; d <= length; ++d) {
        std::set<std::string> ext;
        if (event_stage && d == *event_stage) ext.insert(atom);
        w = m.add_child(w, ext);
    }
    return m;
}

std::vector<Natural> BranchModel::worlds_at_depth(Natural d) const {
    std::vector<Natural> out;
    for (Natural w = 0; w < worlds_.size(); ++w) {
        if (worlds_[w].depth == d) out.push_back(w);
    }
    return out;
}

namespace {

void descendants_or_self(const BranchModel& m, Natural w, std::vector<Natural>& out) {
    out.push_back(w);
    for (Natural c : m.world(w).children) descendants_or_self(m, c, out);
}

/// Worlds reached from w after exactly n further stages; a leaf repeats
/// forever, so short branches saturate at their leaf.
void worlds_after(const BranchModel& m, Natural w, Natural n, std::vector<Natural>& out) {
    if (n == 0) {
        out.push_back(w);
        return;
    }
    const auto& children = m.world(w).children;
    if (children.empty()) {
        out.push_back(w);
        return;
    }
    for (Natural c : children) worlds_after(m, c, n - 1, out);
}

Natural actual_path_after(const BranchModel& m, Natural w, Natural n) {
    Natural cur = w;
    for (Natural i = 0; i < n; ++i) {
        const auto& children = m.world(cur).children;
        if (children.empty()) break;  // frozen at the leaf
        cur = children.front();       // designated continuation
    }
    return cur;
}

/// Worlds at absolute stage n on branches through w: the unique ancestor
/// when n <= depth(w), all reachable stage-n worlds otherwise.
std::vector<Natural> stage_worlds_through(const BranchModel& m, Natural w, Natural n) {
    Natural d = m.world(w).depth;
    if (n <= d) {
        Natural cur = w;
        while (m.world(cur).depth > n) cur = m.world(cur).parent;
        return {cur};
    }
    std::vector<Natural> out;
    worlds_after(m, w, n - d, out);
    return out;
}

}  // namespace

bool forces(const BranchModel& model, Natural w, const FormulaPtr& f, GMode mode) {
    switch (f->op) {
        case Formula::Op::Atom: return model.world(w).atoms.count(f->atom) != 0;
        case Formula::Op::False: return false;
        case Formula::Op::And: return forces(model, w, f->lhs, mode) && forces(model, w, f->rhs, mode);
        case Formula::Op::Or: return forces(model, w, f->lhs, mode) || forces(model, w, f->rhs, mode);
        case Formula::Op::Imp: {
            std::vector<Natural> ws;
            descendants_or_self(model, w, ws);
            for (Natural v : ws) {
                if (forces(model, v, f->lhs, mode) && !forces(model, v, f->rhs, mode)) return false;
            }
            return true;
        }
        case Formula::Op::Not: {
            std::vector<Natural> ws;
            descendants_or_self(model, w, ws);
            for (Natural v : ws) {
                if (forces(model, v, f->lhs, mode)) return false;
            }
            return true;
        }
        case Formula::Op::Box: {
            for (Natural v : stage_worlds_through(model, w, f->stage)) {
                if (!forces(model, v, f->lhs, mode)) return false;
            }
            return true;
        }
        case Formula::Op::Future: {
            if (mode == GMode::ActualPath) {
                return forces(model, actual_path_after(model, w, f->stage), f->lhs, mode);
            }
            std::vector<Natural> ws;
            worlds_after(model, w, f->stage, ws);
            for (Natural v : ws) {
                if (!forces(model, v, f->lhs, mode)) return false;
            }
            return true;
        }
    }
    return false;
}

bool eval_branching(const BranchModel& model, Natural w, const FormulaPtr& f, GMode mode) {
    Natural need = model.world(w).depth + future_depth(f);
    if (need > model.depth()) {
        throw DepthExceeded("formula looks " + std::to_string(future_depth(f)) +
                            " stages ahead of depth-" + std::to_string(model.world(w).depth) +
                            " world in a depth-" + std::to_string(model.depth()) + " model");
    }
    if (max_box_stage(f) > model.depth()) {
        throw DepthExceeded("box stage " + std::to_string(max_box_stage(f)) +
                            " beyond model depth " + std::to_string(model.depth()));
    }
    return forces(model, w, f, mode);
}

namespace {

void subformulas(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (!f) return;
    out.push_back(f);
    subformulas(f->lhs, out);
    subformulas(f->rhs, out);
}

}  // namespace

bool forcing_monotone(const BranchModel& model, const FormulaPtr& f, GMode mode) {
    std::vector<FormulaPtr> subs;
    subformulas(f, subs);
    for (const auto& g : subs) {
        for (Natural w = 0; w < model.size(); ++w) {
            if (!forces(model, w, g, mode)) continue;
            std::vector<Natural> below;
            descendants_or_self(model, w, below);
            for (Natural v : below) {
                if (!forces(model, v, g, mode)) return false;
            }
        }
    }
    return true;
}

CountermodelResult countermodel_search(const FormulaPtr& f, Natural max_worlds, GMode mode) {
    if (max_worlds > 1024) throw std::invalid_argument("countermodel_search caps at 2^10 worlds");
    CountermodelResult result;
    auto atoms = atoms_of(f);
    std::string a = atoms.empty() ? "A" : *atoms.begin();
    std::string b = atoms.size() > 1 ? *std::next(atoms.begin()) : "B";

    auto try_model = [&](BranchModel&& m, std::string desc) -> bool {
        if (m.size() > max_worlds) return false;
        ++result.models_tried;
        for (Natural w = 0; w < m.size(); ++w) {
            if (!forces(m, w, f, mode)) {
                result.found = true;
                result.model = std::move(m);
                result.world = w;
                result.description = std::move(desc);
                return true;
            }
        }
        return false;
    };

    // chains first (trace-shaped), smallest models first
    for (Natural len = 1; len <= 8; ++len) {
        if (try_model(BranchModel::chain(len, std::nullopt, a), "chain, no event")) return result;
        for (Natural k = 1; k <= len; ++k) {
            if (try_model(BranchModel::chain(len, k, a),
                          "chain, event at stage " + std::to_string(k))) {
                return result;
            }
        }
    }
    for (Natural d = 1; d <= 9; ++d) {
        BranchModel m = BranchModel::evidence_tree(d, a);
        if (m.size() > max_worlds) break;
        if (try_model(std::move(m), "binary evidence tree, depth " + std::to_string(d))) {
            return result;
        }
    }
    if (atoms.size() > 1) {
        for (Natural d = 1; d <= 5; ++d) {
            BranchModel m = BranchModel::evidence_tree2(d, a, b);
            if (m.size() > max_worlds) break;
            if (try_model(std::move(m), "two-atom evidence tree, depth " + std::to_string(d))) {
                return result;
            }
        }
    }
    return result;  // Exhausted
}

// --- axiom suite -------------------------------------------------------------

std::vector<EvidenceSchedule> sweep_schedules_one_atom(Natural horizon, const std::string& atom) {
    std::vector<EvidenceSchedule> out;
    // 0 means "no event of this kind"
    for (Natural a = 0; a <= horizon; ++a) {
        for (Natural r = 0; r <= horizon; ++r) {
            for (Natural d = 0; d <= horizon; ++d) {
                if (a && r) continue;  // contradictory
                if (r && d) continue;
                std::vector<ScheduleEvent> events;
                if (a) events.push_back({a, {atom, JudgmentKind::Affirm}});
                if (r) events.push_back({r, {atom, JudgmentKind::Refute}});
                if (d) events.push_back({d, {atom, JudgmentKind::DoubleNeg}});
                auto v = validate_schedule(horizon, std::move(events));
                out.push_back(std::move(*v.schedule));
            }
        }
    }
    return out;
}

namespace {

std::vector<EvidenceSchedule> sweep_schedules(Natural horizon, Natural atom_count) {
    auto first = sweep_schedules_one_atom(horizon, "A");
    if (atom_count == 1) return first;
    std::vector<EvidenceSchedule> out;
    auto second = sweep_schedules_one_atom(horizon, "B");
    for (const auto& sa : first) {
        for (const auto& sb : second) {
            std::vector<ScheduleEvent> events = sa.events;
            events.insert(events.end(), sb.events.begin(), sb.events.end());
            auto v = validate_schedule(horizon, std::move(events));
            out.push_back(std::move(*v.schedule));
        }
    }
    return out;
}

FormulaPtr big_or(const std::vector<FormulaPtr>& fs) {
    FormulaPtr acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = mk_or(acc, fs[i]);
    return acc;
}

}  // namespace

bool AxiomSuiteReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

AxiomSuiteReport check_axiom_suite(Natural horizon, Natural atom_count) {
    if (horizon > 10 || atom_count < 1 || atom_count > 2) {
        throw std::invalid_argument("axiom suite needs horizon <= 10 and 1..2 atoms");
    }
    AxiomSuiteReport report;
    auto schedules = sweep_schedules(horizon, atom_count);
    report.schedules_swept = schedules.size();
    std::vector<std::string> atoms{"A"};
    if (atom_count == 2) atoms.push_back("B");

    // CS-1: box is total over its domain, and the decidability disjunction
    // evaluates true on every schedule.
    bool cs1 = true;
    bool cs2 = true;
    bool cs3_plus = true;
    for (const auto& sched : schedules) {
        SubjectTrace trace(sched);
        for (const auto& atom : atoms) {
            auto box_a = [&](Natural n) { return mk_box(n, mk_atom(atom)); };
            for (Natural n = 0; n <= horizon; ++n) {
                cs1 &= eval_trace(trace, mk_or(box_a(n), mk_not(box_a(n))));
            }
            for (Natural n = 0; n <= horizon; ++n) {
                for (Natural m = n; m <= horizon; ++m) {
                    cs2 &= eval_trace(trace, mk_imp(box_a(n), box_a(m)));
                }
            }
        }
        // finite-horizon CS+3: a judgment is scheduled within H iff box
        // holds at some stage <= H
        for (const auto& atom : atoms) {
            for (auto kind : {JudgmentKind::Affirm, JudgmentKind::Refute, JudgmentKind::DoubleNeg}) {
                Judgment j{atom, kind};
                bool scheduled = trace.stage_of(j).has_value();
                bool boxed = false;
                for (Natural n = 0; n <= horizon && !boxed; ++n) boxed = trace.box(n, j);
                cs3_plus &= (scheduled == boxed);
            }
        }
    }
    report.checks.push_back({"CS-1 stage decidability", "trace", true, cs1, "exhaustive sweep"});
    report.checks.push_back({"CS-2 monotone memory", "trace", true, cs2, "exhaustive sweep"});
    report.checks.push_back(
        {"CS+3 finite-horizon biconditional", "trace", true, cs3_plus, "exhaustive sweep"});

    // branching side: Niekus' G operator on the binary evidence tree
    Natural depth = std::min<Natural>(std::max<Natural>(horizon, 3), 4);
    BranchModel tree = BranchModel::evidence_tree(depth, "A");

    auto run_g_checks = [&](GMode mode, const std::string& mode_name) {
        // (L053) analogue: exists n G_n B -> B with B = box[1](A) | ~box[1](A)
        FormulaPtr b = mk_or(mk_box(1, mk_atom("A")), mk_not(mk_box(1, mk_atom("A"))));
        std::vector<FormulaPtr> gs;
        for (Natural n = 0; n <= depth; ++n) gs.push_back(mk_future(n, b));
        FormulaPtr l053 = mk_imp(big_or(gs), b);
        bool l053_countermodel = !forces(tree, 0, l053, mode);
        report.checks.push_back({"exists n G_n B -> B invalid", mode_name, false,
                                 l053_countermodel,
                                 l053_countermodel ? "countermodel at the root" : "no countermodel"});

        // (L054) analogue: forall n (G_n A or ~G_n A); the k = 1 instance
        // already fails at the root
        FormulaPtr g1 = mk_future(1, mk_atom("A"));
        FormulaPtr l054 = mk_or(g1, mk_not(g1));
        bool l054_countermodel = !forces(tree, 0, l054, mode);
        report.checks.push_back({"forall n (G_n A | ~G_n A) invalid", mode_name, false,
                                 l054_countermodel,
                                 l054_countermodel ? "countermodel at the root" : "no countermodel"});

        // (L055) analogue: A -> exists n G_n A, valid at every world
        std::vector<FormulaPtr> gas;
        for (Natural n = 0; n <= 1; ++n) gas.push_back(mk_future(n, mk_atom("A")));
        FormulaPtr l055 = mk_imp(mk_atom("A"), big_or(gas));
        bool l055_valid = true;
        for (Natural w = 0; w < tree.size(); ++w) l055_valid &= forces(tree, w, l055, mode);
        report.checks.push_back({"A -> exists n G_n A valid", mode_name, true, l055_valid, ""});

        // CS+2 analogue: G_n A -> G_{n+m} A
        bool gmono = true;
        for (Natural n = 0; n + 1 <= depth; ++n) {
            for (Natural m = 0; n + m <= depth; ++m) {
                FormulaPtr f = mk_imp(mk_future(n, mk_atom("A")), mk_future(n + m, mk_atom("A")));
                for (Natural w : tree.worlds_at_depth(0)) gmono &= forces(tree, w, f, mode);
            }
        }
        report.checks.push_back({"G_n A -> G_{n+m} A valid", mode_name, true, gmono, ""});
    };
    run_g_checks(GMode::AllBranches, "branching");
    run_g_checks(GMode::ActualPath, "branching/actual-path");

    // forcing monotonicity on the generated tree (all-branches semantics)
    FormulaPtr probe = mk_imp(mk_or(mk_future(1, mk_atom("A")), mk_box(1, mk_atom("A"))),
                              mk_not(mk_not(mk_atom("A"))));
    bool mono = tree.monotone_valuation() && forcing_monotone(tree, probe, GMode::AllBranches);
    report.checks.push_back({"forcing monotonicity", "branching", true, mono, "probe formula"});

    return report;
}

}  // namespace cslab
