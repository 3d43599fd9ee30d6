#include "cslab/constructions.hpp"

#include <algorithm>
#include <cassert>

namespace cslab {

namespace {

Rational half_power_signed(Natural v) {
    // (-1/2)^v
    Rational r = dyadic(v);
    return (v % 2 == 0) ? r : Rational(-r);
}

/// Pre-trigger values follow `pre`; from 0-based index m-1 on the value is
/// the constant `tail` (the event at stage m fixed all further choices).
CReal frozen_constant(Natural m, const Rational& tail, std::function<Rational(Natural)> pre,
                      std::string tag) {
    Natural freeze_idx = m - 1;
    CReal::Spec s;
    s.approximant = [freeze_idx, tail, pre = std::move(pre)](Natural i) {
        return i >= freeze_idx ? tail : pre(i);
    };
    s.modulus = [freeze_idx](unsigned) { return freeze_idx; };
    s.constant_from = freeze_idx;
    s.kind = CReal::Kind::ScheduleDriven;
    s.tag = std::move(tag);
    return CReal(std::move(s));
}

/// Still rolling at the horizon: values known for indices 0..H-1 only.
/// `spread` bounds the ideal limit over every admissible continuation.
CReal rolling(Natural horizon, std::function<Rational(Natural)> values,
              std::pair<Rational, Rational> spread, std::string tag) {
    CReal::Spec s;
    s.approximant = std::move(values);
    s.modulus = [](unsigned p) { return Natural{p} + 1; };
    s.available = horizon;
    s.enclosure = [spread]() { return spread; };
    s.kind = CReal::Kind::ScheduleDriven;
    s.tag = std::move(tag);
    return CReal(std::move(s));
}

Natural next_even(Natural x) { return x % 2 == 0 ? x : x + 1; }

}  // namespace

FleeingProperty FleeingProperty::never() {
    return {[](Natural) { return false; }, std::nullopt};
}

FleeingProperty FleeingProperty::with_critical(Natural k) {
    return {[k](Natural v) { return v == k; }, k};
}

bool FleeingProperty::consistent_up_to(Natural bound) const {
    if (!declared_critical) return true;
    Natural k = *declared_critical;
    for (Natural i = 1; i < k && i <= bound; ++i) {
        if (predicate(i)) return false;
    }
    if (k <= bound && !predicate(k)) return false;
    return true;
}

CReal brouwer1948_r(const SubjectTrace& trace, const std::string& atom) {
    auto affirm = trace.stage_of({atom, JudgmentKind::Affirm});
    auto refute = trace.stage_of({atom, JudgmentKind::Refute});
    std::string tag = "r1948(" + atom + ")";
    auto zero = [](Natural) { return Rational(0); };
    if (affirm) return frozen_constant(*affirm, dyadic(*affirm), zero, tag);
    if (refute) return frozen_constant(*refute, -dyadic(*refute), zero, tag);
    Natural h = trace.horizon();
    Rational b = dyadic(h + 1);
    return rolling(h, zero, {-b, b}, tag);
}

CReal brouwer1948_positive(const SubjectTrace& trace, const std::string& atom) {
    auto affirm = trace.stage_of({atom, JudgmentKind::Affirm});
    auto refute = trace.stage_of({atom, JudgmentKind::Refute});
    std::string tag = "r1948pos(" + atom + ")";
    auto zero = [](Natural) { return Rational(0); };
    std::optional<Natural> m;
    if (affirm && refute) m = std::min(*affirm, *refute);  // validator forbids; belt and braces
    else if (affirm) m = affirm;
    else if (refute) m = refute;
    if (m) return frozen_constant(*m, dyadic(*m), zero, tag);
    Natural h = trace.horizon();
    return rolling(h, zero, {Rational(0), dyadic(h + 1)}, tag);
}

std::pair<CReal, CReal> heyting_pair(const SubjectTrace& trace, const std::string& atom) {
    auto tested = trace.tested_stage(atom);
    Natural h = trace.horizon();
    auto decay = [](Natural i) { return dyadic(i + 1); };
    CReal r = [&] {
        if (tested) return frozen_constant(*tested, dyadic(*tested), decay, "heyting_r(" + atom + ")");
        return rolling(h, decay, {Rational(0), dyadic(h + 1)}, "heyting_r(" + atom + ")");
    }();
    CReal s = [&] {
        std::string tag = "heyting_s(" + atom + ")";
        if (tested && *tested % 2 == 0) return frozen_constant(*tested, dyadic(*tested), decay, tag);
        if (tested) {
            // odd test: the clause fixes s(n) = 2^{-n} forever, a lawlike tail
            CReal::Spec spec;
            spec.approximant = decay;
            spec.modulus = [](unsigned p) { return Natural{p} + 1; };
            spec.enclosure = []() { return std::pair<Rational, Rational>{0, 0}; };
            spec.kind = CReal::Kind::ScheduleDriven;
            spec.tag = tag;
            return CReal(std::move(spec));
        }
        // untested: a future even-stage test freezes at 2^{-m'} with m' even > h
        return rolling(h, decay, {Rational(0), dyadic(next_even(h + 1))}, tag);
    }();
    return {std::move(r), std::move(s)};
}

Drift Drift::dyadic_right() {
    Drift d;
    d.kernel = CReal::constant(0, "kernel0");
    d.counting = [](Natural n) { return CReal::constant(dyadic(n), "c_" + std::to_string(n)); };
    d.convergence_modulus = [](unsigned p) { return Natural{p}; };
    d.counting_modulus = [](unsigned) { return Natural{0}; };
    d.wing = Wing::Right;
    return d;
}

Drift Drift::dyadic_two_winged() {
    Drift d;
    d.kernel = CReal::constant(0, "kernel0");
    d.counting = [](Natural n) {
        // union of the wings, zigzagged: d_1, l_1, d_2, l_2, ...
        Natural k = (n + 1) / 2;
        Rational v = n % 2 == 1 ? dyadic(k) : Rational(-dyadic(k));
        return CReal::constant(v, "c_" + std::to_string(n));
    };
    d.convergence_modulus = [](unsigned p) { return Natural{2} * p; };
    d.counting_modulus = [](unsigned) { return Natural{0}; };
    d.wing = Wing::Two;
    d.left = [](Natural n) { return CReal::constant(-dyadic(n), "l_" + std::to_string(n)); };
    d.right = [](Natural n) { return CReal::constant(dyadic(n), "d_" + std::to_string(n)); };
    return d;
}

namespace {

Rational sqrt2_convergent(Natural i) {
    // p/q with p' = p + 2q, q' = p + q from 1/1: 1, 3/2, 7/5, 17/12, ...
    Int p = 1, q = 1;
    for (Natural k = 0; k < i; ++k) {
        Int np = p + 2 * q;
        Int nq = p + q;
        p = np;
        q = nq;
    }
    return Rational(p, q);
}

}  // namespace

Drift Drift::sqrt2_rational_counting() {
    Drift d;
    CReal::Spec k;
    k.approximant = sqrt2_convergent;
    // |conv_i - conv_j| <= 2/q_min^2 <= 2^{1-2 min}, q_i >= 2^i
    k.modulus = [](unsigned p) { return Natural{(p + 2) / 2}; };
    k.kind = CReal::Kind::Lawlike;
    k.tag = "sqrt2";
    d.kernel = CReal(std::move(k));
    d.counting = [](Natural n) {
        return CReal::constant(sqrt2_convergent(n - 1), "conv_" + std::to_string(n - 1));
    };
    d.convergence_modulus = [](unsigned p) { return Natural{(p + 4) / 2}; };
    d.counting_modulus = [](unsigned) { return Natural{0}; };
    d.wing = Wing::Two;
    d.left = [](Natural n) {
        return CReal::constant(sqrt2_convergent(2 * (n - 1)), "conv_below");
    };
    d.right = [](Natural n) { return CReal::constant(sqrt2_convergent(2 * n - 1), "conv_above"); };
    return d;
}

std::vector<std::string> Drift::validate(Natural upto, Natural depth) const {
    std::vector<std::string> failures;
    for (Natural n = 1; n <= upto; ++n) {
        if (!apart(counting(n), kernel, depth).established()) {
            failures.push_back("counting " + std::to_string(n) + " not certified apart from kernel");
        }
        for (Natural k = n + 1; k <= upto; ++k) {
            if (!apart(counting(n), counting(k), depth).established()) {
                failures.push_back("counting " + std::to_string(n) + " and " + std::to_string(k) +
                                   " not certified apart");
            }
        }
    }
    return failures;
}

namespace {

CReal checking_number(const Drift& drift, const SubjectTrace& trace,
                      std::optional<Natural> trigger, const std::function<CReal(Natural)>& target_for,
                      std::string tag) {
    const CReal& kernel = drift.kernel;
    if (trigger) {
        Natural m = *trigger;
        Natural freeze_idx = m - 1;
        CReal target = target_for(m);
        CReal::Spec s;
        s.approximant = [freeze_idx, target, kernel](Natural i) {
            return i >= freeze_idx ? target.at(i) : kernel.at(i);
        };
        s.modulus = [freeze_idx, target](unsigned p) {
            return std::max(freeze_idx, target.modulus_index(p));
        };
        if (auto c = target.constant_from()) s.constant_from = std::max(freeze_idx, *c);
        s.available = target.available();
        s.kind = CReal::Kind::ScheduleDriven;
        s.tag = std::move(tag);
        return CReal(std::move(s));
    }
    Natural h = trace.horizon();
    auto convN = drift.convergence_modulus;
    auto countN = drift.counting_modulus;
    CReal::Spec s;
    s.approximant = [kernel](Natural i) { return kernel.at(i); };
    s.modulus = [kernel, convN, countN](unsigned p) {
        return std::max({kernel.modulus_index(p + 2), convN(p + 2), countN(p + 2)});
    };
    if (auto avail = kernel.available()) s.available = std::min(*avail, h);
    else s.available = h;
    s.enclosure = [kernel, convN, h]() {
        // a future freeze lands on a counting number no farther from the
        // kernel than the convergence modulus allows at stage h+1
        unsigned pstar = 0;
        for (unsigned p = 0; p <= 96 && convN(p) <= h + 1; ++p) pstar = p;
        Rational b = dyadic(pstar);
        auto k = kernel.best_enclosure();
        return std::pair<Rational, Rational>{k.first - b, k.second + b};
    };
    s.kind = CReal::Kind::ScheduleDriven;
    s.tag = std::move(tag);
    return CReal(std::move(s));
}

}  // namespace

CReal direct_checking(const Drift& drift, const SubjectTrace& trace, const std::string& atom) {
    return checking_number(drift, trace, trace.decided_stage(atom),
                           [&drift](Natural m) { return drift.counting(m); },
                           "direct(" + atom + ")");
}

CReal conditional_checking(const Drift& drift, const SubjectTrace& trace,
                           const std::string& atom) {
    return checking_number(drift, trace, trace.stage_of({atom, JudgmentKind::Affirm}),
                           [&drift](Natural m) { return drift.counting(m); },
                           "conditional(" + atom + ")");
}

CReal two_sided_checking(const Drift& drift, const SubjectTrace& trace, const std::string& atom) {
    if (drift.wing != Drift::Wing::Two) {
        throw ConstructionError("WingMismatch: two_sided_checking needs a two-winged drift");
    }
    auto affirm = trace.stage_of({atom, JudgmentKind::Affirm});
    auto refute = trace.stage_of({atom, JudgmentKind::Refute});
    std::optional<Natural> trigger = affirm ? affirm : refute;
    bool use_right = affirm.has_value();
    return checking_number(
        drift, trace, trigger,
        [&drift, use_right](Natural m) { return use_right ? drift.right(m) : drift.left(m); },
        "two_sided(" + atom + ")");
}

CReal fleeing_sequence_1924(const FleeingProperty& fp, Natural horizon) {
    auto pred = fp.predicate;
    auto value = [pred](Natural i) {
        Natural v = i + 1;
        for (Natural w = 1; w <= v; ++w) {
            if (pred(w)) return half_power_signed(w);
        }
        return half_power_signed(v);
    };
    std::optional<Natural> k1;
    for (Natural w = 1; w <= horizon; ++w) {
        if (pred(w)) {
            k1 = w;
            break;
        }
    }
    if (k1) {
        Natural freeze_idx = *k1 - 1;
        CReal::Spec s;
        s.approximant = value;
        s.modulus = [](unsigned p) { return Natural{p}; };
        s.constant_from = freeze_idx;
        s.kind = CReal::Kind::Lawlike;
        s.tag = "fleeing1924";
        return CReal(std::move(s));
    }
    CReal::Spec s;
    s.approximant = value;
    s.modulus = [](unsigned p) { return Natural{p}; };
    s.available = horizon;
    Rational b = dyadic(horizon + 1);
    s.enclosure = [b]() { return std::pair<Rational, Rational>{-b, b}; };
    s.kind = CReal::Kind::Lawlike;
    s.tag = "fleeing1924";
    return CReal(std::move(s));
}

Bounds omega(Natural nu, const Rational& x) {
    if (nu < 1) throw std::invalid_argument("omega requires nu >= 1");
    Rational ax = abs(x);
    Rational lo = dyadic(nu);
    Rational hi = dyadic(nu - 1);
    if (ax <= lo || ax >= hi) return {Rational(0), Rational(0), true};
    Rational radicand = 3 * lo * ax - ax * ax - pow2(1 - 2 * static_cast<long>(nu));
    assert(radicand >= 0);  // nonnegative on the whole support
    return sqrt_bounds(radicand, 40);
}

Bounds omega_sum(Natural nu_max, const Rational& x) {
    // supports have disjoint interiors: at most one term is nonzero
    Rational ax = abs(x);
    if (ax == 0 || ax >= 1) return {Rational(0), Rational(0), true};
    Natural nu = 1;
    while (dyadic(nu) >= ax) ++nu;
    if (nu > nu_max) return {Rational(0), Rational(0), true};
    return omega(nu, x);
}

Bounds z_eval(const SubjectTrace& trace, const std::string& atom, const Rational& x,
              Natural depth) {
    Rational ax = abs(x);
    if (ax == 0 || ax >= 1) return {Rational(0), Rational(0), true};
    Natural nu = 1;
    while (dyadic(nu) >= ax) ++nu;
    if (ax == dyadic(nu - 1)) return {Rational(0), Rational(0), true};  // support boundary
    auto decided = trace.decided_stage(atom);
    if (decided) {
        // zeta(v) is the zero function from v = m on
        if (nu >= *decided) return {Rational(0), Rational(0), true};
        return omega(nu, x);
    }
    Natural known = std::min(depth, trace.horizon());
    if (nu > known) {
        throw HorizonError("zeta(" + std::to_string(nu) + ") not yet chosen within depth " +
                           std::to_string(known));
    }
    return omega(nu, x);
}

Tangency tangency_search(Natural nu, const Rational& resolution) {
    if (nu < 1) throw std::invalid_argument("tangency_search requires nu >= 1");
    if (resolution < dyadic(40)) {
        throw std::invalid_argument("tangency resolution must be >= 2^-40");
    }
    Rational a = dyadic(nu);
    Rational two_a_sq = pow2(1 - 2 * static_cast<long>(nu));
    auto ratio_sq = [&](const Rational& x) {
        return (3 * a * x - x * x - two_a_sq) / (x * x);
    };
    Rational lo = a;
    Rational hi = 2 * a;
    // the squared ratio is strictly unimodal on the support
    while (hi - lo > resolution) {
        Rational step = (hi - lo) / 3;
        Rational m1 = lo + step;
        Rational m2 = hi - step;
        if (ratio_sq(m1) < ratio_sq(m2)) lo = m1;
        else hi = m2;
    }
    Rational xstar = (lo + hi) / 2;
    return {xstar, sqrt_bounds(ratio_sq(xstar), 40)};
}

Bounds difference_quotient(const std::function<Bounds(const Rational&)>& f, const Rational& a,
                           const Rational& b) {
    if (a == b) throw ConstructionError("DegenerateInterval: difference quotient needs a != b");
    Bounds fa = f(a);
    Bounds fb = f(b);
    Rational d = b - a;
    Rational lo = (fb.lo - fa.hi) / d;
    Rational hi = (fb.hi - fa.lo) / d;
    if (d < 0) std::swap(lo, hi);
    return {lo, hi, fa.exact && fb.exact};
}

CReal negcont_r_omega(const CReal& base, const std::vector<CReal>& family,
                      const std::vector<AlignDecision>& decisions) {
    std::optional<AlignDecision> align;
    for (const auto& d : decisions) {
        if (!d.target) continue;  // Stay
        if (align) throw ConstructionError("MultipleAlignments: only one alignment decision");
        align = d;
    }
    if (!align) {
        CReal::Spec s;
        s.approximant = [base](Natural i) { return base.at(i); };
        s.modulus = [base](unsigned p) { return base.modulus_index(p); };
        s.available = base.available();
        s.constant_from = base.constant_from();
        s.kind = CReal::Kind::ScheduleDriven;
        s.tag = "r_omega(undecided)";
        return CReal(std::move(s));
    }
    Natural stage = align->stage;
    Natural t = *align->target;
    if (t > family.size()) {
        throw ConstructionError("alignment target " + std::to_string(t) + " outside family of " +
                                std::to_string(family.size()));
    }
    CReal target = t == 0 ? base : family[t - 1];
    CReal::Spec s;
    s.approximant = [base, target, stage](Natural i) {
        return i >= stage ? target.at(i) : base.at(i);
    };
    s.modulus = [target, stage](unsigned p) {
        return std::max(stage, target.modulus_index(p));
    };
    if (auto c = target.constant_from()) s.constant_from = std::max(stage, *c);
    s.available = target.available();
    s.kind = CReal::Kind::ScheduleDriven;
    s.tag = "r_omega(aligned@" + std::to_string(stage) + ")";
    return CReal(std::move(s));
}

}  // namespace cslab
