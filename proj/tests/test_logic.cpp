#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cslab/logic.hpp"

#include <cstdint>

using namespace cslab;

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

SubjectTrace trace_of(Natural horizon, std::vector<ScheduleEvent> events) {
    auto v = validate_schedule(horizon, std::move(events));
    REQUIRE(v.ok());
    return SubjectTrace(std::move(*v.schedule));
}

FormulaPtr random_formula(std::uint64_t seed, unsigned depth) {
    if (depth == 0 || mix(seed) % 5 == 0) {
        switch (mix(seed + 1) % 4) {
            case 0: return mk_atom("A");
            case 1: return mk_atom("B_1");
            case 2: return mk_atom("box");  // keyword-shaped atom, legal without a bracket
            default: return mk_false();
        }
    }
    switch (mix(seed + 2) % 6) {
        case 0: return mk_not(random_formula(seed * 3 + 1, depth - 1));
        case 1:
            return mk_and(random_formula(seed * 3 + 1, depth - 1),
                          random_formula(seed * 5 + 2, depth - 1));
        case 2:
            return mk_or(random_formula(seed * 3 + 1, depth - 1),
                         random_formula(seed * 5 + 2, depth - 1));
        case 3:
            return mk_imp(random_formula(seed * 3 + 1, depth - 1),
                          random_formula(seed * 5 + 2, depth - 1));
        case 4: return mk_box(mix(seed + 3) % 7, random_formula(seed * 3 + 1, depth - 1));
        default: return mk_future(mix(seed + 4) % 4, random_formula(seed * 3 + 1, depth - 1));
    }
}

}  // namespace

TEST_CASE("parser handles the grammar") {
    FormulaPtr f = parse("box[3](A)");
    CHECK(f->op == Formula::Op::Box);
    CHECK(f->stage == 3);
    CHECK(f->lhs->op == Formula::Op::Atom);

    FormulaPtr g = parse("G[2](A | ~A)");
    CHECK(g->op == Formula::Op::Future);
    CHECK(g->lhs->op == Formula::Op::Or);

    FormulaPtr h = parse("A -> ~~A");
    CHECK(h->op == Formula::Op::Imp);
    CHECK(h->rhs->op == Formula::Op::Not);
    CHECK(h->rhs->lhs->op == Formula::Op::Not);

    CHECK(parse("false")->op == Formula::Op::False);
    CHECK(parse("box")->op == Formula::Op::Atom);  // bare keyword is an atom
    CHECK(parse("A & B | C")->op == Formula::Op::Or);
    CHECK(parse("A -> B -> C")->rhs->op == Formula::Op::Imp);  // right associative
}

TEST_CASE("parser reports positions") {
    CHECK_THROWS_AS((void)parse("A -> "), SyntaxError);
    CHECK_THROWS_AS((void)parse("(A"), SyntaxError);
    CHECK_THROWS_AS((void)parse("box[](A)"), SyntaxError);
    CHECK_THROWS_AS((void)parse("A B"), SyntaxError);
    try {
        (void)parse("A & ");
    } catch (const SyntaxError& e) {
        CHECK(e.position >= 3);
    }
}

TEST_CASE("print/parse round-trips on random formulas") {
    for (std::uint64_t s = 0; s < 1000; ++s) {
        FormulaPtr f = random_formula(s, 8);
        FormulaPtr g = parse(print(f));
        CHECK(equal(f, g));
    }
}

TEST_CASE("print normalizes whitespace only") {
    std::string text = "box[2](  A )->~ A |false";
    CHECK(print(parse(text)) == "box[2](A) -> ~A | false");
    CHECK(equal(parse(print(parse(text))), parse(text)));
}

TEST_CASE("trace evaluation reads the box table") {
    auto t = trace_of(6, {{3, {"A", JudgmentKind::Affirm}}});
    CHECK(eval_trace(t, parse("box[3](A)")));
    CHECK_FALSE(eval_trace(t, parse("box[2](A)")));
    CHECK(eval_trace(t, parse("box[5](A)")));
    CHECK_FALSE(eval_trace(t, parse("false")));
    CHECK(eval_trace(t, parse("A")));
    CHECK_THROWS_AS((void)eval_trace(t, parse("box[9](A)")), StageError);
    CHECK_THROWS_AS((void)eval_trace(t, parse("box[2](A & A)")), std::invalid_argument);

    auto refuted = trace_of(6, {{2, {"A", JudgmentKind::Refute}}});
    CHECK(eval_trace(refuted, parse("box[2](~A)")));
    CHECK_FALSE(eval_trace(refuted, parse("box[1](~A)")));
    auto dneg = trace_of(6, {{2, {"A", JudgmentKind::DoubleNeg}}});
    CHECK(eval_trace(dneg, parse("box[4](~~A)")));
}

TEST_CASE("CS-2 instances hold on every schedule") {
    for (const auto& sched : sweep_schedules_one_atom(6, "A")) {
        SubjectTrace t(sched);
        CHECK(eval_trace(t, parse("box[2](A) -> box[5](A)")));
    }
}

TEST_CASE("branching: ~A and decisions at the root") {
    BranchModel tree = BranchModel::evidence_tree(3, "A");
    CHECK(tree.monotone_valuation());
    FormulaPtr pem = parse("A | ~A");
    CHECK_FALSE(forces(tree, 0, pem));
    FormulaPtr dn_pem = parse("~~(A | ~A)");
    for (Natural w = 0; w < tree.size(); ++w) CHECK(forces(tree, w, dn_pem));
    CHECK(forces(tree, 0, parse("A -> A")));
}

TEST_CASE("box inside branching models is settled per branch") {
    BranchModel tree = BranchModel::evidence_tree(3, "A");
    FormulaPtr box1 = parse("box[1](A)");
    CHECK_FALSE(forces(tree, 0, box1));
    // the world that proved A at stage 1 forces it; its descendants agree
    bool some_forced = false;
    for (Natural w = 0; w < tree.size(); ++w) some_forced |= forces(tree, w, box1);
    CHECK(some_forced);
    FormulaPtr b = parse("box[1](A) | ~box[1](A)");
    CHECK_FALSE(forces(tree, 0, b));
    for (Natural w : tree.worlds_at_depth(2)) CHECK(forces(tree, w, b));
}

TEST_CASE("the future operator settles undecided matters on every branch") {
    BranchModel tree = BranchModel::evidence_tree(4, "A");
    FormulaPtr b = parse("box[1](A) | ~box[1](A)");
    CHECK(forces(tree, 0, mk_future(2, b)));
    CHECK_FALSE(forces(tree, 0, b));
    // hence "exists n G_n B -> B" fails at the root
    FormulaPtr exists_g = mk_or(mk_future(0, b), mk_or(mk_future(1, b), mk_future(2, b)));
    CHECK_FALSE(forces(tree, 0, mk_imp(exists_g, b)));
    // while "A -> exists n G_n A" holds everywhere
    FormulaPtr a_to_g = mk_imp(mk_atom("A"), mk_or(mk_future(0, mk_atom("A")),
                                                   mk_future(1, mk_atom("A"))));
    for (Natural w = 0; w < tree.size(); ++w) CHECK(forces(tree, w, a_to_g));
    // and G_n A -> G_{n+m} A
    CHECK(forces(tree, 0, mk_imp(mk_future(1, mk_atom("A")), mk_future(3, mk_atom("A")))));
}

TEST_CASE("G_n A | ~G_n A fails at the root") {
    BranchModel tree = BranchModel::evidence_tree(4, "A");
    FormulaPtr g1 = mk_future(1, mk_atom("A"));
    CHECK_FALSE(forces(tree, 0, mk_or(g1, mk_not(g1))));
}

TEST_CASE("actual-path mode also invalidates the two analogues") {
    BranchModel tree = BranchModel::evidence_tree(4, "A");
    FormulaPtr b = parse("box[1](A) | ~box[1](A)");
    FormulaPtr exists_g = mk_or(mk_future(0, b), mk_future(2, b));
    CHECK_FALSE(forces(tree, 0, mk_imp(exists_g, b), GMode::ActualPath));
    FormulaPtr g1 = mk_future(1, mk_atom("A"));
    CHECK_FALSE(forces(tree, 0, mk_or(g1, mk_not(g1)), GMode::ActualPath));
    FormulaPtr a_to_g = mk_imp(mk_atom("A"), mk_future(0, mk_atom("A")));
    for (Natural w = 0; w < tree.size(); ++w) CHECK(forces(tree, w, a_to_g, GMode::ActualPath));
}

TEST_CASE("forcing is monotone on evidence trees") {
    BranchModel tree = BranchModel::evidence_tree(4, "A");
    CHECK(forcing_monotone(tree, parse("G[1](box[1](A) | ~box[1](A)) -> ~~A")));
    CHECK(forcing_monotone(tree, parse("box[2](A) | G[2](A) | ~A")));
    BranchModel two = BranchModel::evidence_tree2(3, "A", "B");
    CHECK(two.monotone_valuation());
    CHECK(forcing_monotone(two, parse("(A -> B) | G[1](A & B)")));
}

TEST_CASE("eval_branching enforces its depth precondition") {
    BranchModel tree = BranchModel::evidence_tree(2, "A");
    CHECK_THROWS_AS((void)eval_branching(tree, 0, parse("G[5](A)")), DepthExceeded);
    CHECK_THROWS_AS((void)eval_branching(tree, 0, parse("box[7](A)")), DepthExceeded);
    CHECK_NOTHROW((void)eval_branching(tree, 0, parse("G[2](A)")));
}

TEST_CASE("countermodel search") {
    auto pem = countermodel_search(parse("A | ~A"), 31);
    REQUIRE(pem.found);
    CHECK(pem.model.size() == 2);  // root plus one child where A fires
    CHECK(pem.model.world(pem.world).depth == 0);

    auto dn = countermodel_search(parse("~~(A | ~A)"), 31);
    CHECK_FALSE(dn.found);
    CHECK(dn.models_tried > 0);

    auto contradiction = countermodel_search(parse("false"), 31);
    REQUIRE(contradiction.found);
    CHECK(contradiction.model.size() <= 2);

    CHECK_THROWS_AS((void)countermodel_search(parse("A"), 4096), std::invalid_argument);
}

TEST_CASE("trace-valid box formulas survive chain models") {
    // soundness cross-check on the box fragment, where trace truth and
    // single-branch forcing agree: stage knowledge is settled along a chain,
    // so the swept decidability and monotonicity instances stay forced.
    // (Bare excluded middle is trace-true too but already fails on a chain
    // whose event is still ahead; the box operator is what the trace
    // evaluator decides.)
    std::vector<FormulaPtr> axioms;
    for (Natural n = 0; n <= 4; ++n) {
        auto box_n = mk_box(n, mk_atom("A"));
        axioms.push_back(mk_or(box_n, mk_not(box_n)));
        for (Natural m = n; m <= 4; ++m) {
            axioms.push_back(mk_imp(box_n, mk_box(m, mk_atom("A"))));
        }
    }
    for (const auto& f : axioms) {
        for (const auto& sched : sweep_schedules_one_atom(4, "A")) {
            CHECK(eval_trace(SubjectTrace(sched), f));
        }
        for (Natural len = 4; len <= 6; ++len) {
            for (Natural k = 0; k <= len; ++k) {
                BranchModel chain =
                    BranchModel::chain(len, k == 0 ? std::nullopt : std::optional<Natural>(k), "A");
                for (Natural w = 0; w < chain.size(); ++w) CHECK(forces(chain, w, f));
            }
        }
    }
}

TEST_CASE("axiom suite report") {
    AxiomSuiteReport report = check_axiom_suite(6, 1);
    CHECK(report.all_pass());
    CHECK(report.schedules_swept > 0);
    bool saw_actual_path = false;
    for (const auto& c : report.checks) saw_actual_path |= c.mode == "branching/actual-path";
    CHECK(saw_actual_path);

    AxiomSuiteReport two = check_axiom_suite(4, 2);
    CHECK(two.all_pass());
    CHECK_THROWS_AS((void)check_axiom_suite(12, 1), std::invalid_argument);
}
