#pragma once

#include "cslab/creal.hpp"
#include "cslab/schedule.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cslab {

/// A 0/1 sequence up to some horizon, with a record of what produced it.
struct BinarySeq {
    std::vector<int> values;
    std::string provenance;

    int at(Natural n) const { return n < values.size() ? values[n] : 0; }
    Natural size() const { return values.size(); }
    std::optional<Natural> first_one() const;
};

/// Clause-by-clause verification of the schema conjuncts at a finite
/// horizon. clause2 is evaluated with the horizon-relative reading: "no
/// event within H" stands in for the unbounded "never"; it is reported as
/// such, never as a proof of the negation.
struct ClauseReport {
    bool clause1 = false;            // every value is 0 or 1
    bool clause2_forward = false;    // all-zero within H  ->  no event within H
    bool clause2_backward = false;   // no event within H  ->  all-zero
    bool clause3 = false;            // a 1 at n  ->  the event occurred by stage n+1
    bool plus_reverse = false;       // event within H  ->  some 1 (the BKS+ direction)
    std::string notes;

    bool weak_ok() const { return clause1 && clause2_forward && clause2_backward && clause3; }
    bool strong_ok() const { return weak_ok() && plus_reverse; }
    bool operator==(const ClauseReport&) const = default;
};

/// alpha(n) = 1 iff by stage n+1 the target judgment is established;
/// monotone once 1 (the Subject never forgets).
BinarySeq alpha_from_trace(const SubjectTrace& trace, const Judgment& target);

/// alpha*: keeps the first 1 only; all-zero stays all-zero.
BinarySeq dedup(const BinarySeq& alpha);

struct ZigzagResult {
    BinarySeq beta;
    std::vector<Natural> beyond_family;  // positions whose unpaired x had no sequence; value 0
};

/// beta(pair(x,k)) = alpha_x(k): one sequence coding a finite family.
ZigzagResult zigzag_merge(const std::vector<BinarySeq>& family, Natural length);

/// Species enumerators. Membership of n is the atom named by n in decimal;
/// the normalization "the first membership proof is 0 in X at stage 0" is
/// built in, so f(0) = 0 always.
struct Enumerator {
    Natural inhabitant = 0;
    Natural horizon = 0;
    std::function<Natural(Natural)> f;  // defined for pair(n, m) with m <= horizon
};

/// From the zigzag coding: f(pair(x,k)) = inhabitant when beta is 0 there,
/// x when 1. Throws UninhabitedFixture when no membership event exists and
/// the inhabitant is not the normalized 0.
Enumerator species_enumerator(const SubjectTrace& trace, Natural inhabitant);

/// The enumeration-theorem map: f(pair(n,m)) = n if the membership of n is
/// established by stage m, else f(0) = 0. Throws NotNormalized when 0 is
/// not in the fixture.
Enumerator cs_enumerate(const SubjectTrace& trace, const std::vector<Natural>& fixture);

/// Exactness of "n in X iff exists m <= H with f(pair(n,m)) = n" over
/// n <= probe_max, where X is the fixture underlying the trace.
bool enumerator_biconditional(const Enumerator& e, const std::vector<Natural>& fixture,
                              Natural probe_max);

/// Wednesday clause: with alpha carrying at most one 1, a 1 sitting at a
/// position of the form t(x) contradicts a scenario that asserts the event
/// is known never to land on t-positions.
Verdict wednesday_check(const BinarySeq& alpha, const std::function<Natural(Natural)>& t,
                        const SubjectTrace& trace, const Judgment& target,
                        bool asserted_never_on_t);

/// 0 until the Affirm stage, then a fixed random positive number forever
/// (splitmix64 on the seed, so runs are reproducible).
std::vector<Natural> random_witness(const SubjectTrace& trace, const std::string& atom,
                                    std::uint64_t seed);

/// alpha(n) = 1 iff two consecutive approximants of C(gamma,A) coincide by
/// position n (1-based positions; alpha(0) has nothing to compare and is 0).
/// Sound only when pre-freeze approximants never repeat: a repeat at a
/// kernel position throws RepeatingKernel.
BinarySeq bks_plus_from_conditional(const std::vector<Rational>& c_prefix,
                                    std::optional<Natural> freeze_position);

ClauseReport verify_bks_clauses(const BinarySeq& alpha, const SubjectTrace& trace,
                                const Judgment& target);

}  // namespace cslab
