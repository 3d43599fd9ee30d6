#pragma once

#include "cslab/creal.hpp"
#include "cslab/schedule.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cslab {

struct ConstructionError : std::runtime_error {
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

/// A decidable predicate on positive naturals with no known instance and
/// no known refutation. declared_critical is scenario bookkeeping: the
/// hidden first witness, unknown to the constructions that scan for it.
struct FleeingProperty {
    std::function<bool(Natural)> predicate;  // domain 1, 2, 3, ...
    std::optional<Natural> declared_critical;

    static FleeingProperty never();
    static FleeingProperty with_critical(Natural k);

    /// Checks predicate(i) = false for i < k and predicate(k) = true.
    bool consistent_up_to(Natural bound) const;
};

/// A kernel real plus counting numbers apart from it and converging to it.
struct Drift {
    enum class Wing { Left, Right, Two };

    CReal kernel = CReal::constant(0, "kernel0");
    std::function<CReal(Natural)> counting;               // 1-based n -> c_n
    std::function<Natural(unsigned)> convergence_modulus;  // p -> least m with |c_m - c| <= 2^{-p}
    std::function<Natural(unsigned)> counting_modulus;     // uniform per-real modulus of the c_n
    Wing wing = Wing::Right;
    std::function<CReal(Natural)> left;   // l_n, two-winged only
    std::function<CReal(Natural)> right;  // d_n, two-winged only

    /// Kernel 0, counting numbers 2^{-n} (right-winged).
    static Drift dyadic_right();

    /// Kernel 0, wings l_n = -2^{-n}, d_n = 2^{-n}.
    static Drift dyadic_two_winged();

    /// Irrational kernel sqrt(2) with its rational continued-fraction
    /// convergents as counting numbers (the rationality scenarios).
    static Drift sqrt2_rational_counting();

    /// Certifies the definition: counting numbers pairwise apart and apart
    /// from the kernel, for n, k <= upto. Returns the failures.
    std::vector<std::string> validate(Natural upto, Natural depth) const;
};

/// 1948 sequence: 0 while A undecided; evidence of A at stage m freezes the
/// tail at 2^{-m}, evidence of ~A at -2^{-m}. DoubleNeg events are ignored.
CReal brouwer1948_r(const SubjectTrace& trace, const std::string& atom);

/// The positive variant: a refutation also freezes at +2^{-m}.
CReal brouwer1948_positive(const SubjectTrace& trace, const std::string& atom);

/// Heyting's refinement. r decays 2^{-n} until A is tested at m, then holds
/// 2^{-m}; s does the same but keeps decaying forever when m is odd.
std::pair<CReal, CReal> heyting_pair(const SubjectTrace& trace, const std::string& atom);

/// Checking numbers of a drift through A: kernel until the trigger event,
/// then the chosen counting number's tail.
///   direct      - triggers on A or ~A
///   conditional - triggers on A only
///   two_sided   - A picks the right wing d_m, ~A the left wing l_m
CReal direct_checking(const Drift& drift, const SubjectTrace& trace, const std::string& atom);
CReal conditional_checking(const Drift& drift, const SubjectTrace& trace, const std::string& atom);
CReal two_sided_checking(const Drift& drift, const SubjectTrace& trace,
                         const std::string& atom);  // throws WingMismatch

/// 1924 lawlike sequence: c_v = (-1/2)^v before the first witness of the
/// property, frozen at (-1/2)^{k1} from the critical number k1 on.
CReal fleeing_sequence_1924(const FleeingProperty& fp, Natural horizon);

/// omega_nu: 0 outside +-[2^{-nu}, 2^{1-nu}], else
/// sqrt(3*2^{-nu}|x| - x^2 - 2^{1-2nu}), evaluated exactly in rationals
/// (interval of width <= 2^{-40} when the radicand is not a square).
Bounds omega(Natural nu, const Rational& x);

/// Z = sum of zeta(nu); zeta(nu) = omega_nu until A is decided at stage m,
/// the zero function from nu = m on. Throws HorizonError when the value
/// hinges on choices beyond the trace horizon or the given depth.
Bounds z_eval(const SubjectTrace& trace, const std::string& atom, const Rational& x,
              Natural depth);

/// Sum of omega_nu for nu = 1..nu_max (the undisturbed figure).
Bounds omega_sum(Natural nu_max, const Rational& x);

struct Tangency {
    Rational abscissa;  // maximizer of omega_nu(x)/x
    Bounds slope;       // the ratio there
};

/// Maximizes omega_nu(x)/x by ternary search on the exactly-evaluated
/// squared ratio. resolution >= 2^{-40}.
Tangency tangency_search(Natural nu, const Rational& resolution);

/// (f(b) - f(a)) / (b - a); throws DegenerateInterval when a = b.
Bounds difference_quotient(const std::function<Bounds(const Rational&)>& f, const Rational& a,
                           const Rational& b);

/// Appendix-B r_omega: copies base until a free alignment decision at
/// stage s, then copies the chosen target (0 = base, k >= 1 = family[k-1])
/// from index s on. At most one alignment; Stay entries are no-ops.
struct AlignDecision {
    Natural stage;
    std::optional<Natural> target;  // nullopt = Stay
};
CReal negcont_r_omega(const CReal& base, const std::vector<CReal>& family,
                      const std::vector<AlignDecision>& decisions);

}  // namespace cslab
