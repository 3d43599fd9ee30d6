#pragma once

#include "cslab/numeric.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cslab {

struct HorizonError : std::runtime_error {
    explicit HorizonError(const std::string& what) : std::runtime_error(what) {}
};

enum class VerdictStatus { Established, Refuted, Unknown };
enum class ApartSide { Left, Right };

/// Replayable witness for a measurable gap: at index i0 both sequences
/// are 2^{-p}-stable onward (p absent when both tails are exactly known),
/// and the approximant gap there exceeds 2^{-n} by more than the margin
/// 2 * 2^{-p}. That certifies y - x > 2^{-n} for the ideal reals.
struct ApartCertificate {
    Natural index = 0;
    unsigned gap_exponent = 0;
    std::optional<unsigned> stability_exponent;
    Rational witnessed_gap;
};

/// Three-valued certificate-carrying answer. Negative relations are never
/// Established from finite data; "no evidence yet" is always Unknown with
/// the depth at which the search stopped, never a refutation.
struct Verdict {
    VerdictStatus status = VerdictStatus::Unknown;
    Natural depth = 0;  // Unknown: depth inspected; Established convergence: located n
    std::optional<ApartSide> side;
    std::optional<ApartCertificate> certificate;
    std::vector<Natural> witness_indices;
    std::string note;

    bool established() const { return status == VerdictStatus::Established; }
    bool refuted() const { return status == VerdictStatus::Refuted; }
    bool unknown() const { return status == VerdictStatus::Unknown; }

    static Verdict unknown_at(Natural depth, std::string note = "");
};

std::string to_string(const Verdict& v);

/// A constructive real: a stage-indexed rational sequence with an explicit
/// convergence modulus. Lawlike reals are closed-form; schedule-driven
/// reals read a SubjectTrace and may stop being evaluable past the trace
/// horizon (HorizonError) unless an event has fixed their tail.
class CReal {
  public:
    enum class Kind { Lawlike, ScheduleDriven };

    struct Spec {
        std::function<Rational(Natural)> approximant;          // total where available
        std::function<Natural(unsigned)> modulus;              // p -> N(p), nondecreasing
        std::optional<Natural> available;                      // index count; nullopt = unbounded
        std::optional<Natural> constant_from;                  // exactly constant from this index on
        std::function<std::pair<Rational, Rational>()> enclosure;  // optional refined limit bounds
        Kind kind = Kind::Lawlike;
        std::string tag;
    };

    explicit CReal(Spec spec);

    static CReal constant(const Rational& value, std::string tag = "const");

    /// Memoized sequence value; throws HorizonError past the available range.
    Rational at(Natural i) const;

    /// N(p): all approximants from N(p) on lie within 2^{-p} of each other.
    Natural modulus_index(unsigned p) const;

    /// A rational within 2^{-p} of the ideal limit.
    Rational approx(unsigned p) const;

    /// Number of evaluable indices (nullopt = unbounded).
    std::optional<Natural> available() const;

    std::optional<Natural> constant_from() const;

    /// Largest stability exponent p (p <= cap) such that all values from i0
    /// on are within 2^{-p} of one another; nullopt = exactly stable
    /// (constant tail), no value = not even 2^0-stable at i0.
    struct Stability {
        bool any = false;
        bool infinite = false;
        unsigned exponent = 0;
    };
    Stability stability_from(Natural i0, unsigned cap = 96) const;

    /// Tightest interval known to contain the ideal limit, combining the
    /// modulus with any construction-supplied bound.
    std::pair<Rational, Rational> best_enclosure() const;

    Kind kind() const;
    const std::string& tag() const;

  private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

/// §-style order verdicts --------------------------------------------------

/// x is measurably smaller than y: exists m, n with y(i) - x(i) > 2^{-n}
/// for all i >= m. Established via the margin rule; never Refuted.
Verdict measurably_less(const CReal& x, const CReal& y, Natural depth);

/// x # y: measurably smaller on one side or the other. Established carries
/// the winning side (Right: x < y, Left: x > y).
Verdict apart(const CReal& x, const CReal& y, Natural depth);

/// Finite-precision coincidence surrogate:
/// |approx(x, p+2) - approx(y, p+2)| <= 2^{-p}. True bounds the ideal
/// difference by 2^{-p} + 2^{-p-1}; this is a precision check, not a proof
/// of the unbounded coincidence relation.
bool coincide_up_to(const CReal& x, const CReal& y, unsigned p);

/// Negative (virtual) relations are hypotheses, never Established here.
/// Refuted when a certified verdict contradicts the hypothesis.
enum class NegativeRelation { VirtualLess, VirtualLeq, Coincide };
Verdict check_negative_hypothesis(NegativeRelation rel, const CReal& x, const CReal& y,
                                  Natural depth);

/// Appendix-style dyadic embedding: a_1, a_2, ... (all >= 1) maps to
/// sum_{i=1}^{a1-1} 2^{-i} + sum_{m>=2} 2^{-(a1+...+am)}, a real in (0,1).
/// Throws std::invalid_argument (InvalidTerm) when some a_i = 0.
CReal dyadic_embed(std::function<Natural(Natural)> terms, std::string tag = "dyadic_embed");

/// Convenience: finite prefix continued with constant 1s.
CReal dyadic_embed_prefix(const std::vector<Natural>& prefix);

/// Positive convergence: locates the least n such that every member at
/// 1-based position >= n is certified within 2^{-p} of the limit (the
/// dyadic reading of the 1/p tolerance used everywhere else here). Established(depth = n); Unknown otherwise, with a NonCauchy note
/// when consecutive tail members are certified more than 2/p apart.
Verdict converges_positively(const std::vector<CReal>& seq, const CReal& limit, Natural p,
                             Natural depth);

/// Finite surrogate of the negative-convergence test: Refuted (with the
/// violating 0-based indices) when at least ceil(depth/2) inspected members
/// are certified farther than 2^{-p} from the limit; Unknown otherwise.
Verdict negative_convergence_check(const std::vector<CReal>& seq, const CReal& limit, Natural p,
                                   Natural depth);

}  // namespace cslab
