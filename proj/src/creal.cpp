#include "cslab/creal.hpp"

#include <algorithm>

namespace cslab {

Verdict Verdict::unknown_at(Natural depth, std::string note) {
    Verdict v;
    v.status = VerdictStatus::Unknown;
    v.depth = depth;
    v.note = std::move(note);
    return v;
}

std::string to_string(const Verdict& v) {
    switch (v.status) {
        case VerdictStatus::Established: {
            std::string s = "Established";
            if (v.side) s += *v.side == ApartSide::Left ? "(left" : "(right";
            else s += "(";
            if (v.certificate) {
                const auto& c = *v.certificate;
                s += (v.side ? std::string(", ") : std::string()) + "i0=" +
                     std::to_string(c.index) + ", gap>2^-" + std::to_string(c.gap_exponent) +
                     ", witnessed=" + to_string(c.witnessed_gap);
            } else if (v.side) {
                // nothing further
            } else {
                s += "n=" + std::to_string(v.depth);
            }
            s += ")";
            if (!v.note.empty()) s += " [" + v.note + "]";
            return s;
        }
        case VerdictStatus::Refuted: {
            std::string s = "Refuted(";
            s += std::to_string(v.witness_indices.size()) + " witnesses)";
            if (!v.note.empty()) s += " [" + v.note + "]";
            return s;
        }
        case VerdictStatus::Unknown: {
            std::string s = "Unknown(" + std::to_string(v.depth) + ")";
            if (!v.note.empty()) s += " [" + v.note + "]";
            return s;
        }
    }
    return "?";
}

struct CReal::Impl {
    Spec spec;
    mutable std::map<Natural, Rational> memo;
    mutable std::mutex memo_mutex;
};

CReal::CReal(Spec spec) : impl_(std::make_shared<Impl>()) { impl_->spec = std::move(spec); }

CReal CReal::constant(const Rational& value, std::string tag) {
    Spec s;
    s.approximant = [value](Natural) { return value; };
    s.modulus = [](unsigned) { return Natural{0}; };
    s.constant_from = 0;
    s.kind = Kind::Lawlike;
    s.tag = std::move(tag);
    return CReal(std::move(s));
}

Rational CReal::at(Natural i) const {
    const auto& spec = impl_->spec;
    if (spec.available && i >= *spec.available) {
        throw HorizonError("approximant " + std::to_string(i) + " of '" + spec.tag +
                           "' beyond available horizon " + std::to_string(*spec.available));
    }
    {
        std::lock_guard<std::mutex> lock(impl_->memo_mutex);
        auto it = impl_->memo.find(i);
        if (it != impl_->memo.end()) return it->second;
    }
    Rational v = spec.approximant(i);
    std::lock_guard<std::mutex> lock(impl_->memo_mutex);
    return impl_->memo.emplace(i, std::move(v)).first->second;
}

Natural CReal::modulus_index(unsigned p) const { return impl_->spec.modulus(p); }

Rational CReal::approx(unsigned p) const { return at(modulus_index(p)); }

std::optional<Natural> CReal::available() const { return impl_->spec.available; }

std::optional<Natural> CReal::constant_from() const { return impl_->spec.constant_from; }

CReal::Stability CReal::stability_from(Natural i0, unsigned cap) const {
    Stability st;
    if (impl_->spec.constant_from && *impl_->spec.constant_from <= i0) {
        st.any = true;
        st.infinite = true;
        return st;
    }
    for (unsigned p = 0; p <= cap; ++p) {
        if (modulus_index(p) <= i0) {
            st.any = true;
            st.exponent = p;
        } else {
            break;  // modulus is nondecreasing
        }
    }
    return st;
}

std::pair<Rational, Rational> CReal::best_enclosure() const {
    const auto& spec = impl_->spec;
    std::optional<std::pair<Rational, Rational>> box;
    if (spec.enclosure) box = spec.enclosure();
    // refine with the deepest affordable modulus bound
    unsigned best_p = 0;
    bool found = false;
    for (unsigned p = 0; p <= 96; ++p) {
        Natural idx = modulus_index(p);
        if (!spec.available || idx < *spec.available) {
            best_p = p;
            found = true;
        } else {
            break;
        }
    }
    if (found) {
        Rational c = at(modulus_index(best_p));
        Rational eps = dyadic(best_p);
        std::pair<Rational, Rational> m{c - eps, c + eps};
        if (!box) {
            box = m;
        } else {
            box->first = std::max(box->first, m.first);
            box->second = std::min(box->second, m.second);
        }
    }
    if (!box) throw HorizonError("no enclosure available for '" + spec.tag + "'");
    return *box;
}

CReal::Kind CReal::kind() const { return impl_->spec.kind; }

const std::string& CReal::tag() const { return impl_->spec.tag; }

namespace {

Natural index_cap(const CReal& x, const CReal& y, Natural depth) {
    // pre: depth <= available horizon of both reals
    for (const CReal* r : {&x, &y}) {
        if (auto avail = r->available(); avail && depth > *avail) {
            throw HorizonError("depth " + std::to_string(depth) + " exceeds available horizon " +
                               std::to_string(*avail) + " of '" + r->tag() + "'");
        }
    }
    return depth;
}

unsigned gap_exponent_for(const Rational& t) {
    // smallest n with 2^{-n} < t (t > 0)
    unsigned n = 0;
    while (pow2(-static_cast<long>(n)) >= t) ++n;
    return n;
}

/// Certified bound |u - v| < bound / |u - v| > bound at the deepest
/// affordable working precision; nullopt when neither is certifiable.
std::optional<bool> certified_within(const CReal& u, const CReal& v, const Rational& bound) {
    unsigned best_p = 0;
    bool found = false;
    for (unsigned p = 0; p <= 96; ++p) {
        Natural iu = u.modulus_index(p);
        Natural iv = v.modulus_index(p);
        bool ok_u = !u.available() || iu < *u.available();
        bool ok_v = !v.available() || iv < *v.available();
        if (ok_u && ok_v) {
            best_p = p;
            found = true;
        } else {
            break;
        }
    }
    if (!found) return std::nullopt;
    Rational d = abs(u.approx(best_p) - v.approx(best_p));
    Rational eps = 2 * dyadic(best_p);
    if (d + eps < bound) return true;   // ideal distance certainly below bound
    if (d - eps > bound) return false;  // certainly above
    return std::nullopt;
}

}  // namespace

Verdict measurably_less(const CReal& x, const CReal& y, Natural depth) {
    Natural cap = index_cap(x, y, depth);
    for (Natural i0 = 0; i0 < cap; ++i0) {
        Rational gap = y.at(i0) - x.at(i0);
        if (gap <= 0) continue;
        auto sx = x.stability_from(i0);
        auto sy = y.stability_from(i0);
        if (!sx.any || !sy.any) continue;
        std::optional<unsigned> p;
        Rational margin = 0;
        if (!(sx.infinite && sy.infinite)) {
            unsigned px = sx.infinite ? sy.exponent : sx.exponent;
            unsigned py = sy.infinite ? sx.exponent : sy.exponent;
            p = std::min(px, py);
            margin = 2 * dyadic(*p);
        }
        Rational t = gap - margin;
        if (t <= 0) continue;
        Verdict v;
        v.status = VerdictStatus::Established;
        ApartCertificate cert;
        cert.index = i0;
        cert.gap_exponent = gap_exponent_for(t);
        cert.stability_exponent = p;
        cert.witnessed_gap = gap;
        v.certificate = cert;
        v.depth = depth;
        return v;
    }
    return Verdict::unknown_at(depth);
}

Verdict apart(const CReal& x, const CReal& y, Natural depth) {
    Verdict right = measurably_less(x, y, depth);
    if (right.established()) {
        right.side = ApartSide::Right;
        return right;
    }
    Verdict left = measurably_less(y, x, depth);
    if (left.established()) {
        left.side = ApartSide::Left;
        return left;
    }
    return Verdict::unknown_at(depth);
}

bool coincide_up_to(const CReal& x, const CReal& y, unsigned p) {
    return abs(x.approx(p + 2) - y.approx(p + 2)) <= dyadic(p);
}

Verdict check_negative_hypothesis(NegativeRelation rel, const CReal& x, const CReal& y,
                                  Natural depth) {
    switch (rel) {
        case NegativeRelation::VirtualLess:
        case NegativeRelation::VirtualLeq: {
            // both require not(x measurably greater than y)
            Verdict greater = measurably_less(y, x, depth);
            if (greater.established()) {
                Verdict v;
                v.status = VerdictStatus::Refuted;
                v.certificate = greater.certificate;
                v.note = "x is measurably greater than y";
                return v;
            }
            return Verdict::unknown_at(depth, "consistent so far");
        }
        case NegativeRelation::Coincide: {
            Verdict ap = apart(x, y, depth);
            if (ap.established()) {
                Verdict v;
                v.status = VerdictStatus::Refuted;
                v.certificate = ap.certificate;
                v.side = ap.side;
                v.note = "apartness certified";
                return v;
            }
            return Verdict::unknown_at(depth, "consistent so far");
        }
    }
    return Verdict::unknown_at(depth);
}

CReal dyadic_embed(std::function<Natural(Natural)> terms, std::string tag) {
    auto term = [terms = std::move(terms)](Natural i) {
        Natural a = terms(i);
        if (a == 0) throw std::invalid_argument("InvalidTerm: dyadic_embed term a_" +
                                                std::to_string(i) + " must be >= 1");
        return a;
    };
    CReal::Spec s;
    s.approximant = [term](Natural idx) {
        // partial sum over the first idx+1 terms a_1..a_{idx+1}
        Rational sum = 0;
        Natural a1 = term(1);
        for (Natural j = 1; j < a1; ++j) sum += dyadic(j);
        Natural exponent = a1;
        for (Natural m = 2; m <= idx + 1; ++m) {
            exponent += term(m);
            sum += dyadic(exponent);
        }
        return sum;
    };
    // tails shrink geometrically below 2^{-(m+1)} after m terms
    s.modulus = [](unsigned p) { return Natural{p}; };
    s.kind = CReal::Kind::Lawlike;
    s.tag = std::move(tag);
    return CReal(std::move(s));
}

CReal dyadic_embed_prefix(const std::vector<Natural>& prefix) {
    auto terms = [prefix](Natural i) -> Natural {
        if (i >= 1 && i <= prefix.size()) return prefix[i - 1];
        return 1;
    };
    return dyadic_embed(terms, "dyadic_embed_prefix");
}

Verdict converges_positively(const std::vector<CReal>& seq, const CReal& limit, Natural p,
                             Natural depth) {
    if (p == 0) throw std::invalid_argument("convergence precision p must be >= 1");
    Natural count = std::min<Natural>(seq.size(), depth);
    if (count == 0) return Verdict::unknown_at(0);
    Rational bound = dyadic(p);
    std::vector<int> close(count, -1);  // -1 unknown, 0 certified-far-or-unknown, 1 certified close
    for (Natural i = 0; i < count; ++i) {
        auto c = certified_within(seq[i], limit, bound);
        close[i] = c.has_value() ? (*c ? 1 : 0) : -1;
    }
    // least n such that every 1-based position m >= n is certified close
    Natural n = count;
    while (n > 0 && close[n - 1] == 1) --n;
    if (n < count) {
        Verdict v;
        v.status = VerdictStatus::Established;
        v.depth = (n == 0) ? 0 : n + 1;  // skip nothing -> 0, else first good 1-based position
        return v;
    }
    Verdict u = Verdict::unknown_at(count);
    // NonCauchy heuristic: adjacent tail members certified more than 2/p apart
    for (Natural i = count / 2; i + 1 < count; ++i) {
        auto far = certified_within(seq[i], seq[i + 1], 2 * bound);
        if (far.has_value() && !*far) {
            u.note = "NonCauchy";
            break;
        }
    }
    return u;
}

Verdict negative_convergence_check(const std::vector<CReal>& seq, const CReal& limit, Natural p,
                                   Natural depth) {
    if (p == 0) throw std::invalid_argument("convergence precision p must be >= 1");
    Natural count = std::min<Natural>(seq.size(), depth);
    if (count == 0) return Verdict::unknown_at(0);
    Rational bound = dyadic(p);
    std::vector<Natural> violators;
    for (Natural i = 0; i < count; ++i) {
        auto c = certified_within(seq[i], limit, bound);
        if (c.has_value() && !*c) violators.push_back(i);
    }
    Natural threshold = (depth + 1) / 2;
    if (violators.size() >= threshold && threshold > 0) {
        Verdict v;
        v.status = VerdictStatus::Refuted;
        v.witness_indices = std::move(violators);
        v.depth = count;
        return v;
    }
    return Verdict::unknown_at(count);
}

}  // namespace cslab
