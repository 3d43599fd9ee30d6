#pragma once

#include "cslab/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cslab {

enum class JudgmentKind { Affirm, Refute, DoubleNeg };

std::string to_string(JudgmentKind k);
std::optional<JudgmentKind> judgment_kind_from_string(const std::string& s);

/// One proof event: evidence of A, of not-A, or of not-not-A.
struct Judgment {
    std::string atom;
    JudgmentKind kind;

    bool operator==(const Judgment&) const = default;
};

struct ScheduleEvent {
    Natural stage;  // 1..horizon
    Judgment judgment;

    bool operator==(const ScheduleEvent&) const = default;
};

enum class ScheduleErrorKind { DuplicateEvent, ContradictoryEvidence, StageOutOfRange };

struct ScheduleError {
    ScheduleErrorKind kind;
    std::string detail;
};

/// A finite-horizon script of the Creating Subject's proof events.
/// Invariants (enforced by validate_schedule):
///   - stages lie in 1..horizon
///   - at most one event per (atom, kind)
///   - no atom carries both Affirm and Refute, nor both Refute and DoubleNeg
/// Affirm and DoubleNeg may coexist: proving A and later realising
/// not-not-A are distinct acts.
struct EvidenceSchedule {
    Natural horizon = 1;
    std::vector<ScheduleEvent> events;
};

struct ScheduleValidation {
    std::optional<EvidenceSchedule> schedule;  // canonical (events sorted by stage)
    std::vector<ScheduleError> errors;

    bool ok() const { return errors.empty(); }
};

/// Checks every invariant and reports the complete violation list.
ScheduleValidation validate_schedule(Natural horizon, std::vector<ScheduleEvent> events);

/// The monotone knowledge state induced by a schedule. knowledge(n) is
/// exactly the scheduled events with stage <= n; evidence is not closed
/// under deduction, so Affirm A never implies DoubleNeg A here.
class SubjectTrace {
  public:
    explicit SubjectTrace(EvidenceSchedule schedule);

    Natural horizon() const { return schedule_.horizon; }
    const EvidenceSchedule& schedule() const { return schedule_; }

    /// True iff j is in knowledge(n). Total for n <= horizon; throws
    /// StageError beyond.
    bool box(Natural n, const Judgment& j) const;

    /// Testability at stage n: a Refute or DoubleNeg event for the atom
    /// has occurred by n.
    bool tested_by(Natural n, const std::string& atom) const;

    /// Earliest stage m <= horizon at which j is known, if any.
    std::optional<Natural> stage_of(const Judgment& j) const;

    /// Earliest stage with Affirm or Refute for the atom (A decided).
    std::optional<Natural> decided_stage(const std::string& atom) const;

    /// Earliest stage with Refute or DoubleNeg for the atom (A tested).
    std::optional<Natural> tested_stage(const std::string& atom) const;

    std::vector<Judgment> knowledge(Natural n) const;

  private:
    void require_stage(Natural n) const;

    EvidenceSchedule schedule_;
};

struct StageError : std::out_of_range {
    explicit StageError(const std::string& what) : std::out_of_range(what) {}
};

/// Interactive stage-stepper backing the CLI REPL: a partial schedule
/// that grows as the session advances. Single-owner mutable state.
class Session {
  public:
    explicit Session(Natural horizon) : horizon_(horizon) {}

    Natural current_stage() const { return stage_; }
    Natural horizon() const { return horizon_; }

    /// Moves to the next stage; returns false at the horizon.
    bool advance();

    /// Records an event at stage current+1 (evidence obtained between the
    /// current choice and the next). Rejected injections leave the
    /// session unchanged; the error list explains why.
    std::vector<ScheduleError> inject(const Judgment& j);

    /// Trace over the full horizon with the events recorded so far.
    /// Stages beyond current_stage() are provisional: queries about them
    /// are only settled where an already-recorded event freezes the future.
    SubjectTrace trace() const;

    const std::vector<ScheduleEvent>& events() const { return events_; }

  private:
    Natural horizon_;
    Natural stage_ = 0;
    std::vector<ScheduleEvent> events_;
};

}  // namespace cslab
