#pragma once

#include "cslab/schedule.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace cslab {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// AST for intuitionistic propositional logic with the stage operators
/// box[n] and G[n]. Stage indices are concrete literals; schema-level
/// quantifiers over n are expanded by the harness.
struct Formula {
    enum class Op { Atom, False, Not, And, Or, Imp, Box, Future };

    Op op;
    std::string atom;   // Atom
    Natural stage = 0;  // Box / Future
    FormulaPtr lhs, rhs;
};

FormulaPtr mk_atom(std::string name);
FormulaPtr mk_false();
FormulaPtr mk_not(FormulaPtr a);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_imp(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_box(Natural n, FormulaPtr a);
FormulaPtr mk_future(Natural n, FormulaPtr a);

bool equal(const FormulaPtr& a, const FormulaPtr& b);
std::set<std::string> atoms_of(const FormulaPtr& f);
Natural max_box_stage(const FormulaPtr& f);
Natural future_depth(const FormulaPtr& f);  // max nested sum of G stages

struct SyntaxError : std::runtime_error {
    std::size_t position;
    SyntaxError(std::size_t pos, const std::string& msg)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

/// Grammar:
///   formula := imp ; imp := or ("->" imp)? ; or := and ("|" and)* ;
///   and := unary ("&" unary)* ;
///   unary := "~" unary | "box" "[" nat "]" "(" formula ")"
///          | "G" "[" nat "]" "(" formula ")" | "(" formula ")" | "false" | atom ;
///   atom := [A-Za-z][A-Za-z0-9_]*
FormulaPtr parse(const std::string& text);

/// Minimal-parenthesis printer; parse(print(f)) reproduces f.
std::string print(const FormulaPtr& f);

/// Trace semantics: connectives classical over the fixed complete
/// schedule. box[n] over an atom reads the Affirm table, over ~a the
/// Refute table, over ~~a the DoubleNeg table; other bodies are not
/// trace-decidable and are rejected. G[n] is transparent over a completed
/// history. Total for in-horizon stage indices (StageError beyond).
bool eval_trace(const SubjectTrace& trace, const FormulaPtr& f);

struct DepthExceeded : std::runtime_error {
    explicit DepthExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Finite branching evidence trees: each world is a knowledge state, the
/// children are its one-stage extensions, valuation is monotone. Leaves
/// repeat forever (evidence frozen), which keeps forcing total and
/// monotone past the modeled depth.
class BranchModel {
  public:
    static constexpr Natural npos = static_cast<Natural>(-1);

    struct World {
        Natural parent = npos;
        std::vector<Natural> children;
        Natural depth = 0;
        std::set<std::string> atoms;  // cumulative along the branch
    };

    Natural add_root();
    Natural add_child(Natural parent, std::set<std::string> atoms);

    Natural size() const { return worlds_.size(); }
    Natural depth() const { return depth_; }
    const World& world(Natural w) const { return worlds_.at(w); }
    bool monotone_valuation() const;

    /// Single atom; at every stage an undecided branch splits into
    /// "no new evidence" and "A proved now".
    static BranchModel evidence_tree(Natural depth, const std::string& atom = "A");

    /// Two atoms; children enumerate every subset of still-unproved atoms.
    static BranchModel evidence_tree2(Natural depth, const std::string& a = "A",
                                      const std::string& b = "B");

    /// Single branch (trace-shaped): the atom fires at event_stage if given.
    static BranchModel chain(Natural length, std::optional<Natural> event_stage,
                             const std::string& atom = "A");

    std::vector<Natural> worlds_at_depth(Natural d) const;

  private:
    std::vector<World> worlds_;
    Natural depth_ = 0;
};

enum class GMode { AllBranches, ActualPath };

/// Forcing. Box[n] reads the stage-n world(s) on branches through w (the
/// unique ancestor when n <= depth(w), else every reachable stage-n
/// world). G[n] in AllBranches mode quantifies over every world n stages
/// onward; in ActualPath mode it follows the designated (first) child.
bool forces(const BranchModel& model, Natural w, const FormulaPtr& f,
            GMode mode = GMode::AllBranches);

/// Checked entry point: throws DepthExceeded when the formula's stage
/// depth does not fit the model as seen from w.
bool eval_branching(const BranchModel& model, Natural w, const FormulaPtr& f,
                    GMode mode = GMode::AllBranches);

/// Monotonicity of forcing for f and all its subformulas on every world pair.
bool forcing_monotone(const BranchModel& model, const FormulaPtr& f,
                      GMode mode = GMode::AllBranches);

struct CountermodelResult {
    bool found = false;
    BranchModel model;
    Natural world = 0;
    std::string description;
    Natural models_tried = 0;
};

/// Bounded search over chains and binary evidence trees of increasing
/// size; a hit is a (model, world) pair where f is not forced.
CountermodelResult countermodel_search(const FormulaPtr& f, Natural max_worlds,
                                       GMode mode = GMode::AllBranches);

struct AxiomCheck {
    std::string name;
    std::string mode;  // "trace" | "branching" | "branching/actual-path"
    bool expected_valid;
    bool pass;
    std::string detail;
};

struct AxiomSuiteReport {
    std::vector<AxiomCheck> checks;
    Natural schedules_swept = 0;

    bool all_pass() const;
};

/// Trace semantics: CS-1 totality, CS-2 monotone memory, finite-horizon
/// CS+3 over exhaustive schedule sweeps. Branching semantics: the
/// G-operator analogues -- monotone memory and "A -> eventually G A" hold,
/// while "exists n G_n B -> B" and "forall n (G_n A or ~G_n A)" get
/// countermodels; the three G results are also reported in actual-path
/// mode. Needs horizon <= 10 and atom_count in {1, 2}.
AxiomSuiteReport check_axiom_suite(Natural horizon, Natural atom_count);

/// All 1-atom schedules for the given horizon (every stage x kind, plus
/// the consistent multi-event ones); used by sweeps and tests.
std::vector<EvidenceSchedule> sweep_schedules_one_atom(Natural horizon, const std::string& atom);

}  // namespace cslab
