#pragma once

// Sparse multivariate polynomials over an exact field, with block multigrading.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "elimres/error.hpp"
#include "elimres/scalar.hpp"
#include "elimres/space.hpp"

namespace elimres {

template <Field F>
struct Term {
    Monomial mono;
    F coeff;
};

/// Polynomial with terms kept sorted by descending graded-lex order and no
/// zero coefficients. A default-constructed polynomial is a zero without a
/// space; it adopts the space of whatever it is combined with.
template <Field F>
class MultiPoly {
public:
    using Scalar = F;

    MultiPoly() = default;
    explicit MultiPoly(SpacePtr space) : space_(std::move(space)) {}
    MultiPoly(SpacePtr space, const F& c) : space_(std::move(space)) {
        if (!c.is_zero()) terms_.push_back({Monomial{}, c});
    }
    MultiPoly(SpacePtr space, const Monomial& m, const F& c) : space_(std::move(space)) {
        if (!c.is_zero()) terms_.push_back({m, c});
    }

    static MultiPoly variable(SpacePtr space, std::size_t var) {
        Monomial m;
        m.set(var, 1);
        return MultiPoly(std::move(space), m, F(1));
    }
    static MultiPoly variable(SpacePtr space, std::string_view name) {
        auto idx = space->index_of(name);
        if (!idx) throw UsageError("unknown variable '" + std::string(name) + "'");
        return variable(std::move(space), *idx);
    }

    /// Builds from arbitrary (possibly repeated, unsorted, zero) terms.
    static MultiPoly from_terms(SpacePtr space, std::vector<Term<F>> terms) {
        MultiPoly p(std::move(space));
        std::sort(terms.begin(), terms.end(),
                  [](const Term<F>& a, const Term<F>& b) { return grlex_less(b.mono, a.mono); });
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
                p.terms_.back().coeff += t.coeff;
                if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
            } else if (!t.coeff.is_zero()) {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    const SpacePtr& space() const noexcept { return space_; }
    const std::vector<Term<F>>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    bool is_one() const noexcept { return is_constant() && !is_zero() && terms_[0].coeff.is_one(); }

    /// Constant term value; requires is_constant().
    F constant_value() const {
        if (!is_constant()) throw UsageError("polynomial is not constant");
        return terms_.empty() ? F(0) : terms_[0].coeff;
    }

    const Term<F>& leading() const {
        if (terms_.empty()) throw UsageError("leading term of zero polynomial");
        return terms_.front();
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
        return d;
    }

    unsigned degree_in(std::size_t var) const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono[var]);
        return d;
    }

    bool involves(std::size_t var) const {
        return std::any_of(terms_.begin(), terms_.end(), [var](const auto& t) { return t.mono[var] != 0; });
    }

    /// True when only parameter variables occur.
    bool parameters_only() const {
        if (!space_) return true;
        for (std::size_t v = 0; v < space_->size(); ++v)
            if (!space_->is_parameter(v) && involves(v)) return false;
        return true;
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = merge(*this, o, false); }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = merge(*this, o, true); }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = multiply(*this, o); }
    MultiPoly& operator*=(const F& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& t : terms_) t.coeff *= c;
        return *this;
    }
    MultiPoly& operator/=(const F& c) {
        for (auto& t : terms_) t.coeff /= c;
        return *this;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return multiply(a, b); }
    friend MultiPoly operator*(MultiPoly a, const F& c) { return a *= c; }
    friend MultiPoly operator*(const F& c, MultiPoly a) { return a *= c; }
    friend MultiPoly operator/(MultiPoly a, const F& c) { return a /= c; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        if (!a.terms_.empty() && !same_space(a.space_, b.space_)) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
        return true;
    }

    /// Multiplies every term by a monomial.
    MultiPoly shifted(const Monomial& m) const {
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.mono *= m;
        return r;
    }

    MultiPoly pow(unsigned e) const {
        MultiPoly acc(space_, F(1)), base = *this;
        while (e) {
            if (e & 1) acc *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return acc;
    }

    std::size_t hash() const {
        std::size_t h = terms_.size();
        for (const auto& t : terms_) h = h * 1000003u ^ (t.mono.hash() + 31u * t.coeff.hash());
        return h;
    }

private:
    static SpacePtr pick_space(const MultiPoly& a, const MultiPoly& b) {
        if (!a.space_) return b.space_;
        if (!b.space_) return a.space_;
        if (!same_space(a.space_, b.space_)) throw UsageError("polynomials live in different variable spaces");
        return a.space_;
    }

    static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
        MultiPoly r(pick_space(a, b));
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && grlex_less(b.terms_[j].mono, a.terms_[i].mono))) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || grlex_less(a.terms_[i].mono, b.terms_[j].mono)) {
                r.terms_.push_back({b.terms_[j].mono, subtract ? -b.terms_[j].coeff : b.terms_[j].coeff});
                ++j;
            } else {
                F c = subtract ? a.terms_[i].coeff - b.terms_[j].coeff : a.terms_[i].coeff + b.terms_[j].coeff;
                if (!c.is_zero()) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    static MultiPoly multiply(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r(pick_space(a, b));
        if (a.is_zero() || b.is_zero()) return r;
        if (a.terms_.size() == 1 || b.terms_.size() == 1) {
            const auto& single = a.terms_.size() == 1 ? a : b;
            const auto& other = a.terms_.size() == 1 ? b : a;
            const auto& st = single.terms_[0];
            r.terms_.reserve(other.terms_.size());
            for (const auto& t : other.terms_) r.terms_.push_back({t.mono * st.mono, t.coeff * st.coeff});
            return r;
        }
        std::unordered_map<Monomial, F, MonomialHash> acc;
        acc.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) {
                auto [it, fresh] = acc.try_emplace(x.mono * y.mono, x.coeff);
                if (fresh)
                    it->second *= y.coeff;
                else
                    it->second += x.coeff * y.coeff;
            }
        r.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!c.is_zero()) r.terms_.push_back({m, std::move(c)});
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term<F>& x, const Term<F>& y) { return grlex_less(y.mono, x.mono); });
        return r;
    }

    SpacePtr space_;
    std::vector<Term<F>> terms_;
};

template <Field F>
MultiPoly<F> constant(const SpacePtr& space, const F& c) {
    return MultiPoly<F>(space, c);
}

/// Per-geometric-block degree if every term agrees on every geometric block.
template <Field F>
std::optional<MultiDegree> try_geometric_multidegree(const MultiPoly<F>& p) {
    if (p.is_zero()) return std::nullopt;
    const auto& sp = *p.space();
    const auto& geo = sp.geometric_blocks();
    auto degree_of = [&](const Monomial& m) {
        MultiDegree d(std::vector<int>(geo.size(), 0));
        for (std::size_t g = 0; g < geo.size(); ++g) {
            std::size_t off = sp.block_offset(geo[g]), n = sp.block_size(geo[g]);
            for (std::size_t v = off; v < off + n; ++v) d[g] += m[v];
        }
        return d;
    };
    MultiDegree d = degree_of(p.terms().front().mono);
    for (const auto& t : p.terms())
        if (degree_of(t.mono) != d) return std::nullopt;
    return d;
}

template <Field F>
MultiDegree geometric_multidegree(const MultiPoly<F>& p) {
    if (p.is_zero()) throw UsageError("multidegree of the zero polynomial");
    auto d = try_geometric_multidegree(p);
    if (!d) throw PreconditionError("homogeneity", "polynomial is not multihomogeneous");
    return *d;
}

/// Geometric part of a monomial (parameter exponents cleared) and parameter part.
inline std::pair<Monomial, Monomial> split_monomial(const VariableSpace& sp, const Monomial& m) {
    Monomial geo, par;
    for (std::size_t v = 0; v < sp.size(); ++v) {
        if (!m[v]) continue;
        if (sp.is_parameter(v))
            par.set(v, m[v]);
        else
            geo.set(v, m[v]);
    }
    return {geo, par};
}

/// Moves p into another space, matching variables by name.
template <Field F>
MultiPoly<F> change_space(const MultiPoly<F>& p, const SpacePtr& target) {
    if (!p.space() || same_space(p.space(), target)) {
        MultiPoly<F> r(target);
        return r + p;
    }
    const auto& sp = *p.space();
    std::vector<std::optional<std::size_t>> map(sp.size());
    for (std::size_t v = 0; v < sp.size(); ++v) map[v] = target->index_of(sp.name(v));
    std::vector<Term<F>> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
        Monomial m;
        for (std::size_t v = 0; v < sp.size(); ++v) {
            if (!t.mono[v]) continue;
            if (!map[v]) throw UsageError("variable '" + sp.name(v) + "' is not present in the target space");
            m.set(*map[v], t.mono[v]);
        }
        terms.push_back({m, t.coeff});
    }
    return MultiPoly<F>::from_terms(target, std::move(terms));
}

/// Simultaneous substitution. Unbound variables are carried over by name into
/// the target space.
template <Field F>
MultiPoly<F> substitute(const MultiPoly<F>& p, const std::map<std::string, MultiPoly<F>>& bindings,
                        const SpacePtr& target) {
    if (!target) throw UsageError("substitution needs a target space");
    for (const auto& [name, img] : bindings)
        if (img.space() && !same_space(img.space(), target))
            throw UsageError("substitution images for '" + name + "' live in a different space");
    MultiPoly<F> result(target);
    if (p.is_zero()) return result;
    const auto& sp = *p.space();
    std::vector<const MultiPoly<F>*> image(sp.size(), nullptr);
    std::vector<std::optional<std::size_t>> carry(sp.size());
    for (std::size_t v = 0; v < sp.size(); ++v) {
        auto it = bindings.find(sp.name(v));
        if (it != bindings.end())
            image[v] = &it->second;
        else
            carry[v] = target->index_of(sp.name(v));
    }
    std::vector<std::vector<MultiPoly<F>>> powers(sp.size());
    auto power = [&](std::size_t v, unsigned e) -> const MultiPoly<F>& {
        auto& cache = powers[v];
        if (cache.empty()) cache.push_back(MultiPoly<F>(target, F(1)));
        while (cache.size() <= e) cache.push_back(cache.back() * change_space(*image[v], target));
        return cache[e];
    };
    for (const auto& t : p.terms()) {
        Monomial kept;
        MultiPoly<F> factor(target, t.coeff);
        for (std::size_t v = 0; v < sp.size(); ++v) {
            unsigned e = t.mono[v];
            if (!e) continue;
            if (image[v]) {
                factor *= power(v, e);
            } else {
                if (!carry[v]) throw UsageError("variable '" + sp.name(v) + "' is neither bound nor in the target space");
                kept.set(*carry[v], e);
            }
        }
        result += factor.shifted(kept);
    }
    return result;
}

/// Binds some variables to field values; the result stays in the same space.
template <Field F>
MultiPoly<F> evaluate(const MultiPoly<F>& p, const std::map<std::string, F>& values) {
    if (p.is_zero()) return p;
    const auto& sp = *p.space();
    std::vector<std::optional<F>> val(sp.size());
    for (const auto& [name, x] : values) {
        auto idx = sp.index_of(name);
        if (!idx) throw UsageError("unknown variable '" + name + "'");
        val[*idx] = x;
    }
    std::vector<Term<F>> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
        Monomial m;
        F c = t.coeff;
        for (std::size_t v = 0; v < sp.size(); ++v) {
            unsigned e = t.mono[v];
            if (!e) continue;
            if (val[v]) {
                for (unsigned k = 0; k < e; ++k) c *= *val[v];
            } else {
                m.set(v, e);
            }
        }
        terms.push_back({m, c});
    }
    return MultiPoly<F>::from_terms(p.space(), std::move(terms));
}

/// Evaluates at a full point given per variable index.
template <Field F>
F evaluate_at(const MultiPoly<F>& p, const std::vector<F>& point) {
    F acc(0);
    if (p.is_zero()) return acc;
    const auto& sp = *p.space();
    std::vector<std::vector<F>> pw(sp.size());
    for (const auto& t : p.terms()) {
        F c = t.coeff;
        for (std::size_t v = 0; v < sp.size(); ++v) {
            unsigned e = t.mono[v];
            if (!e) continue;
            auto& cache = pw[v];
            if (cache.empty()) cache.push_back(F(1) * point[v]);
            while (cache.size() < e) cache.push_back(cache.back() * point[v]);
            c *= cache[e - 1];
        }
        acc += c;
    }
    return acc;
}

/// Exact quotient p / q, or nullopt when q does not divide p.
template <Field F>
std::optional<MultiPoly<F>> divide_exact(const MultiPoly<F>& p, const MultiPoly<F>& q) {
    if (q.is_zero()) throw std::domain_error("division by the zero polynomial");
    SpacePtr sp = p.space() ? p.space() : q.space();
    if (p.is_zero()) return MultiPoly<F>(sp);
    if (q.size() == 1) {
        const auto& lt = q.leading();
        std::vector<Term<F>> out;
        out.reserve(p.size());
        for (const auto& t : p.terms()) {
            if (!lt.mono.divides(t.mono)) return std::nullopt;
            out.push_back({lt.mono.quotient_of(t.mono), t.coeff / lt.coeff});
        }
        return MultiPoly<F>::from_terms(sp, std::move(out));
    }
    // Quick rejections on per-variable degrees.
    for (std::size_t v = 0; v < sp->size(); ++v)
        if (q.degree_in(v) > p.degree_in(v)) return std::nullopt;
    const auto& lq = q.leading();
    F inv = F(1) / lq.coeff;
    std::map<Monomial, F, GrlexGreater> rem;
    for (const auto& t : p.terms()) rem.emplace(t.mono, t.coeff);
    std::vector<Term<F>> quot;
    while (!rem.empty()) {
        auto it = rem.begin();
        if (!lq.mono.divides(it->first)) return std::nullopt;
        Monomial qm = lq.mono.quotient_of(it->first);
        F qc = it->second * inv;
        rem.erase(it);
        for (std::size_t k = 1; k < q.size(); ++k) {
            const auto& t = q.terms()[k];
            Monomial m = t.mono * qm;
            F c = t.coeff * qc;
            auto [pos, fresh] = rem.try_emplace(m, -c);
            if (!fresh) {
                pos->second -= c;
                if (pos->second.is_zero()) rem.erase(pos);
            }
        }
        quot.push_back({qm, std::move(qc)});
    }
    return MultiPoly<F>::from_terms(sp, std::move(quot));
}

template <Field F>
bool divides(const MultiPoly<F>& q, const MultiPoly<F>& p) {
    if (q.is_zero()) return p.is_zero();
    return divide_exact(p, q).has_value();
}

/// Scalar factor c such that p / c is primitive-positive (rationals) or monic
/// (prime fields) in graded-lex order.
template <Field F>
F normalizer(const MultiPoly<F>& p) {
    std::vector<F> cs;
    cs.reserve(p.size());
    for (const auto& t : p.terms()) cs.push_back(t.coeff);
    return F::normalizer(std::span<const F>(cs));
}

template <Field F>
MultiPoly<F> normalize(const MultiPoly<F>& p) {
    if (p.is_zero()) return p;
    return p / normalizer(p);
}

/// p as a polynomial in `var`: entry k is the coefficient of var^k.
template <Field F>
std::vector<MultiPoly<F>> coefficients_in(const MultiPoly<F>& p, std::size_t var) {
    std::vector<std::vector<Term<F>>> buckets(p.degree_in(var) + 1);
    for (const auto& t : p.terms()) {
        Monomial m = t.mono;
        unsigned e = m[var];
        m.set(var, 0);
        buckets[e].push_back({m, t.coeff});
    }
    std::vector<MultiPoly<F>> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(MultiPoly<F>::from_terms(p.space(), std::move(b)));
    return out;
}

template <Field F>
std::string to_string(const MultiPoly<F>& p) {
    if (p.is_zero()) return "0";
    const auto& sp = *p.space();
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        std::string c = t.coeff.to_string();
        bool negative = !c.empty() && c[0] == '-';
        if (negative) c.erase(0, 1);
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        std::string mono;
        for (std::size_t v = 0; v < sp.size(); ++v) {
            if (!t.mono[v]) continue;
            if (!mono.empty()) mono += "*";
            mono += sp.name(v);
            if (t.mono[v] > 1) mono += "^" + std::to_string(t.mono[v]);
        }
        if (mono.empty())
            out += c;
        else if (c == "1")
            out += mono;
        else
            out += c + "*" + mono;
    }
    return out;
}

}  // namespace elimres
