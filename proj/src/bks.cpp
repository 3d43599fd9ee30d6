#include "cslab/bks.hpp"

#include <algorithm>

namespace cslab {

std::optional<Natural> BinarySeq::first_one() const {
    for (Natural n = 0; n < values.size(); ++n) {
        if (values[n] == 1) return n;
    }
    return std::nullopt;
}

BinarySeq alpha_from_trace(const SubjectTrace& trace, const Judgment& target) {
    BinarySeq alpha;
    alpha.provenance = "alpha_from_trace(" + target.atom + "," + to_string(target.kind) + ")";
    Natural h = trace.horizon();
    alpha.values.reserve(h);
    for (Natural n = 0; n < h; ++n) {
        alpha.values.push_back(trace.box(n + 1, target) ? 1 : 0);
    }
    return alpha;
}

BinarySeq dedup(const BinarySeq& alpha) {
    BinarySeq out;
    out.provenance = alpha.provenance + "|dedup";
    out.values.assign(alpha.values.size(), 0);
    if (auto first = alpha.first_one()) out.values[*first] = 1;
    return out;
}

ZigzagResult zigzag_merge(const std::vector<BinarySeq>& family, Natural length) {
    ZigzagResult result;
    result.beta.provenance = "zigzag(" + std::to_string(family.size()) + " sequences)";
    result.beta.values.reserve(length);
    for (Natural j = 0; j < length; ++j) {
        auto [x, k] = unpair_index(j);
        if (x >= family.size()) {
            result.beyond_family.push_back(j);
            result.beta.values.push_back(0);
        } else {
            result.beta.values.push_back(family[x].at(k));
        }
    }
    return result;
}

namespace {

/// Box_m(n in X) with the proof-normalization Box_0(0 in X) built in.
bool membership_box(const SubjectTrace& trace, Natural n, Natural m) {
    if (n == 0) return true;
    if (m == 0) return false;
    return trace.box(std::min(m, trace.horizon()), Judgment{std::to_string(n), JudgmentKind::Affirm});
}

bool membership_event_exists(const SubjectTrace& trace) {
    for (const auto& ev : trace.schedule().events) {
        if (ev.judgment.kind == JudgmentKind::Affirm) return true;
    }
    return false;
}

}  // namespace

Enumerator species_enumerator(const SubjectTrace& trace, Natural inhabitant) {
    if (inhabitant != 0 && !membership_event_exists(trace)) {
        throw std::invalid_argument("UninhabitedFixture: no membership event in the trace");
    }
    Enumerator e;
    e.inhabitant = inhabitant;
    e.horizon = trace.horizon();
    e.f = [trace, inhabitant](Natural j) {
        auto [x, k] = unpair_index(j);
        if (k > trace.horizon()) {
            throw StageError("enumerator position " + std::to_string(j) + " unpairs to stage " +
                             std::to_string(k) + " beyond the horizon");
        }
        return membership_box(trace, x, k) ? x : inhabitant;
    };
    return e;
}

Enumerator cs_enumerate(const SubjectTrace& trace, const std::vector<Natural>& fixture) {
    if (std::find(fixture.begin(), fixture.end(), Natural{0}) == fixture.end()) {
        throw std::invalid_argument("NotNormalized: fixture lacks the stage-0 membership of 0");
    }
    return species_enumerator(trace, 0);
}

bool enumerator_biconditional(const Enumerator& e, const std::vector<Natural>& fixture,
                              Natural probe_max) {
    for (Natural n = 0; n <= probe_max; ++n) {
        bool member = std::find(fixture.begin(), fixture.end(), n) != fixture.end();
        bool hit = false;
        for (Natural m = 0; m <= e.horizon && !hit; ++m) {
            hit = e.f(pair_index(n, m)) == n;
        }
        if (member != hit) return false;
    }
    return true;
}

Verdict wednesday_check(const BinarySeq& alpha, const std::function<Natural(Natural)>& t,
                        const SubjectTrace& trace, const Judgment& target,
                        bool asserted_never_on_t) {
    Natural ones = 0;
    for (int v : alpha.values) ones += (v == 1);
    if (ones > 1) throw std::invalid_argument("wednesday_check needs a deduped alpha");
    Natural h = trace.horizon();
    auto in_range = [&](Natural pos) {
        // range of t restricted to the horizon; t has unbounded range, so a
        // bounded scan of arguments suffices for positions <= h
        for (Natural x = 0; x <= 4 * h + 4; ++x) {
            if (t(x) == pos) return true;
        }
        return false;
    };
    auto one_pos = alpha.first_one();
    auto event = trace.stage_of(target);
    if (!one_pos && !event) return Verdict::unknown_at(h, "vacuous: nothing decided");
    Verdict v;
    if (!one_pos) {
        // adversarial: event occurred but alpha never fired
        Natural pos = *event - 1;
        v.status = in_range(pos) ? VerdictStatus::Refuted : VerdictStatus::Established;
        v.note = in_range(pos) ? "event at a t-position but alpha has no 1"
                               : "event position avoids range(t)";
        return v;
    }
    if (in_range(*one_pos) && asserted_never_on_t) {
        v.status = VerdictStatus::Refuted;
        v.witness_indices = {*one_pos};
        v.note = "Violation: 1 at t-position " + std::to_string(*one_pos);
        return v;
    }
    v.status = VerdictStatus::Established;
    v.note = "ClauseSatisfied";
    return v;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::vector<Natural> random_witness(const SubjectTrace& trace, const std::string& atom,
                                    std::uint64_t seed) {
    Natural h = trace.horizon();
    std::vector<Natural> out(h, 0);
    auto affirm = trace.stage_of({atom, JudgmentKind::Affirm});
    if (!affirm) return out;
    Natural k = (splitmix64(seed) % 0xffffffffULL) + 1;  // fixed positive number
    for (Natural n = *affirm - 1; n < h; ++n) out[n] = k;
    return out;
}

BinarySeq bks_plus_from_conditional(const std::vector<Rational>& c_prefix,
                                    std::optional<Natural> freeze_position) {
    BinarySeq alpha;
    alpha.provenance = "bks_plus_from_conditional";
    if (c_prefix.empty()) return alpha;
    Natural len = c_prefix.size();
    // C(k) is 1-based: C(k) = c_prefix[k-1]; repeats before the freeze mean
    // the kernel stream is unusable for this construction
    std::optional<Natural> first_repeat;
    for (Natural k = 1; k + 1 <= len; ++k) {
        if (c_prefix[k - 1] == c_prefix[k]) {
            if (!freeze_position || k < *freeze_position) {
                throw std::invalid_argument(
                    "RepeatingKernel: consecutive approximants coincide at position " +
                    std::to_string(k) + " before any freeze");
            }
            first_repeat = k;
            break;
        }
    }
    alpha.values.assign(len - 1 + 1, 0);  // alpha(0..len-1); alpha(n) compares up to C(n+1)
    if (first_repeat) {
        for (Natural n = *first_repeat; n < alpha.values.size(); ++n) alpha.values[n] = 1;
    }
    return alpha;
}

ClauseReport verify_bks_clauses(const BinarySeq& alpha, const SubjectTrace& trace,
                                const Judgment& target) {
    ClauseReport report;
    report.clause1 = std::all_of(alpha.values.begin(), alpha.values.end(),
                                 [](int v) { return v == 0 || v == 1; });
    auto event = trace.stage_of(target);
    bool all_zero = !alpha.first_one().has_value();
    report.clause2_forward = !all_zero || !event.has_value();
    report.clause2_backward = event.has_value() || all_zero;
    report.clause3 = true;
    for (Natural n = 0; n < alpha.size(); ++n) {
        if (alpha.values[n] == 1 && !(event && *event <= n + 1)) report.clause3 = false;
    }
    report.plus_reverse = !event.has_value() || alpha.first_one().has_value();
    report.notes = "clause2 read at horizon " + std::to_string(trace.horizon());
    return report;
}

}  // namespace cslab
