#include "cslab/schedule.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cslab {

std::string to_string(JudgmentKind k) {
    switch (k) {
        case JudgmentKind::Affirm: return "affirm";
        case JudgmentKind::Refute: return "refute";
        case JudgmentKind::DoubleNeg: return "doubleneg";
    }
    return "?";
}

std::optional<JudgmentKind> judgment_kind_from_string(const std::string& s) {
    if (s == "affirm") return JudgmentKind::Affirm;
    if (s == "refute") return JudgmentKind::Refute;
    if (s == "doubleneg") return JudgmentKind::DoubleNeg;
    return std::nullopt;
}

ScheduleValidation validate_schedule(Natural horizon, std::vector<ScheduleEvent> events) {
    ScheduleValidation result;
    if (horizon < 1) {
        result.errors.push_back({ScheduleErrorKind::StageOutOfRange, "horizon must be >= 1"});
        return result;
    }
    std::set<std::pair<std::string, JudgmentKind>> seen;
    std::map<std::string, std::set<JudgmentKind>> kinds_by_atom;
    for (const auto& ev : events) {
        if (ev.stage < 1 || ev.stage > horizon) {
            result.errors.push_back({ScheduleErrorKind::StageOutOfRange,
                                     ev.judgment.atom + " at stage " + std::to_string(ev.stage) +
                                         " outside 1.." + std::to_string(horizon)});
        }
        auto key = std::make_pair(ev.judgment.atom, ev.judgment.kind);
        if (!seen.insert(key).second) {
            result.errors.push_back({ScheduleErrorKind::DuplicateEvent,
                                     to_string(ev.judgment.kind) + " " + ev.judgment.atom +
                                         " scheduled twice"});
        }
        kinds_by_atom[ev.judgment.atom].insert(ev.judgment.kind);
    }
    for (const auto& [atom, kinds] : kinds_by_atom) {
        bool affirm = kinds.count(JudgmentKind::Affirm) != 0;
        bool refute = kinds.count(JudgmentKind::Refute) != 0;
        bool dneg = kinds.count(JudgmentKind::DoubleNeg) != 0;
        if (affirm && refute) {
            result.errors.push_back({ScheduleErrorKind::ContradictoryEvidence,
                                     atom + " carries both affirm and refute"});
        }
        if (refute && dneg) {
            result.errors.push_back({ScheduleErrorKind::ContradictoryEvidence,
                                     atom + " carries both refute and doubleneg"});
        }
    }
    if (!result.errors.empty()) return result;
    std::stable_sort(events.begin(), events.end(),
                     [](const ScheduleEvent& a, const ScheduleEvent& b) { return a.stage < b.stage; });
    result.schedule = EvidenceSchedule{horizon, std::move(events)};
    return result;
}

SubjectTrace::SubjectTrace(EvidenceSchedule schedule) : schedule_(std::move(schedule)) {}

void SubjectTrace::require_stage(Natural n) const {
    if (n > schedule_.horizon) {
        throw StageError("stage " + std::to_string(n) + " beyond horizon " +
                         std::to_string(schedule_.horizon));
    }
}

bool SubjectTrace::box(Natural n, const Judgment& j) const {
    require_stage(n);
    for (const auto& ev : schedule_.events) {
        if (ev.stage <= n && ev.judgment == j) return true;
    }
    return false;
}

bool SubjectTrace::tested_by(Natural n, const std::string& atom) const {
    require_stage(n);
    return box(n, Judgment{atom, JudgmentKind::Refute}) ||
           box(n, Judgment{atom, JudgmentKind::DoubleNeg});
}

std::optional<Natural> SubjectTrace::stage_of(const Judgment& j) const {
    for (const auto& ev : schedule_.events) {
        if (ev.judgment == j) return ev.stage;
    }
    return std::nullopt;
}

std::optional<Natural> SubjectTrace::decided_stage(const std::string& atom) const {
    std::optional<Natural> best;
    for (const auto& ev : schedule_.events) {
        if (ev.judgment.atom != atom) continue;
        if (ev.judgment.kind == JudgmentKind::Affirm || ev.judgment.kind == JudgmentKind::Refute) {
            if (!best || ev.stage < *best) best = ev.stage;
        }
    }
    return best;
}

std::optional<Natural> SubjectTrace::tested_stage(const std::string& atom) const {
    std::optional<Natural> best;
    for (const auto& ev : schedule_.events) {
        if (ev.judgment.atom != atom) continue;
        if (ev.judgment.kind == JudgmentKind::Refute || ev.judgment.kind == JudgmentKind::DoubleNeg) {
            if (!best || ev.stage < *best) best = ev.stage;
        }
    }
    return best;
}

std::vector<Judgment> SubjectTrace::knowledge(Natural n) const {
    require_stage(n);
    std::vector<Judgment> out;
    for (const auto& ev : schedule_.events) {
        if (ev.stage <= n) out.push_back(ev.judgment);
    }
    return out;
}

bool Session::advance() {
    if (stage_ >= horizon_) return false;
    ++stage_;
    return true;
}

std::vector<ScheduleError> Session::inject(const Judgment& j) {
    if (stage_ + 1 > horizon_) {
        return {{ScheduleErrorKind::StageOutOfRange,
                 "no stage left before horizon " + std::to_string(horizon_)}};
    }
    auto candidate = events_;
    candidate.push_back({stage_ + 1, j});
    auto validation = validate_schedule(horizon_, candidate);
    if (!validation.ok()) return validation.errors;
    events_ = std::move(candidate);
    return {};
}

SubjectTrace Session::trace() const {
    auto validation = validate_schedule(horizon_, events_);
    return SubjectTrace(std::move(*validation.schedule));
}

}  // namespace cslab
