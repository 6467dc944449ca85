#pragma once

// Multivariate gcd and content/primitive decomposition.
//
// gcd strips common monomial factors, tries the heuristic evaluation gcd for
// rational input (evaluate at a large integer, recurse, reconstruct, verify by
// division) and falls back to recursive content/primitive reduction with a
// subresultant remainder sequence in the highest variable.

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "elimres/poly.hpp"

namespace elimres {

template <Field F>
MultiPoly<F> gcd(const MultiPoly<F>& a, const MultiPoly<F>& b);

/// Largest monomial dividing every term.
template <Field F>
Monomial monomial_content(const MultiPoly<F>& p) {
    if (p.is_zero()) return Monomial{};
    Monomial g = p.terms().front().mono;
    for (const auto& t : p.terms()) g = Monomial::gcd(g, t.mono);
    return g;
}

namespace detail {

template <Field F>
MultiPoly<F> strip_monomial(const MultiPoly<F>& p, const Monomial& m) {
    if (m.is_one()) return p;
    std::vector<Term<F>> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) terms.push_back({m.quotient_of(t.mono), t.coeff});
    return MultiPoly<F>::from_terms(p.space(), std::move(terms));
}

template <Field F>
std::optional<std::size_t> highest_variable(const MultiPoly<F>& a, const MultiPoly<F>& b) {
    const auto& sp = a.space() ? a.space() : b.space();
    for (std::size_t v = sp->size(); v-- > 0;)
        if (a.involves(v) || b.involves(v)) return v;
    return std::nullopt;
}

/// gcd of the coefficients of p viewed as a polynomial in var.
template <Field F>
MultiPoly<F> content_in(const MultiPoly<F>& p, std::size_t var) {
    auto cs = coefficients_in(p, var);
    MultiPoly<F> g(p.space());
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? normalize(c) : gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

template <Field F>
MultiPoly<F> leading_coefficient_in(const MultiPoly<F>& p, std::size_t var) {
    return coefficients_in(p, var).back();
}

/// Pseudo-remainder of a by b in var.
template <Field F>
MultiPoly<F> pseudo_remainder(const MultiPoly<F>& a, const MultiPoly<F>& b, std::size_t var) {
    unsigned db = b.degree_in(var);
    MultiPoly<F> lb = leading_coefficient_in(b, var);
    MultiPoly<F> r = a;
    int steps = static_cast<int>(a.degree_in(var)) - static_cast<int>(db) + 1;
    int used = 0;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        unsigned dr = r.degree_in(var);
        Monomial shift;
        shift.set(var, dr - db);
        MultiPoly<F> lr = leading_coefficient_in(r, var);
        r = lb * r - (lr * b).shifted(shift);
        ++used;
    }
    for (; used < steps; ++used) r *= lb;
    return r;
}

/// gcd of two polynomials that are primitive in var and both involve it.
template <Field F>
MultiPoly<F> subresultant_gcd(MultiPoly<F> a, MultiPoly<F> b, std::size_t var) {
    if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
    const SpacePtr& sp = a.space();
    MultiPoly<F> g(sp, F(1)), h(sp, F(1));
    while (true) {
        unsigned delta = a.degree_in(var) - b.degree_in(var);
        MultiPoly<F> r = pseudo_remainder(a, b, var);
        if (r.is_zero()) break;
        if (r.degree_in(var) == 0) return MultiPoly<F>(sp, F(1));
        MultiPoly<F> divisor = g * h.pow(delta);
        auto q = divide_exact(r, divisor);
        if (!q) throw InternalError("subresultant sequence lost exactness");
        a = std::move(b);
        b = std::move(*q);
        g = leading_coefficient_in(a, var);
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            auto nh = divide_exact(g.pow(delta), h.pow(delta - 1));
            if (!nh) throw InternalError("subresultant sequence lost exactness");
            h = std::move(*nh);
        }
    }
    MultiPoly<F> c = content_in(b, var);
    auto pp = divide_exact(b, c);
    if (!pp) throw InternalError("content does not divide");
    return normalize(*pp);
}

/// Recursive content/primitive gcd of nonzero inputs without monomial factors.
template <Field F>
MultiPoly<F> recursive_gcd(const MultiPoly<F>& a, const MultiPoly<F>& b) {
    const SpacePtr& sp = a.space();
    if (a.is_constant() || b.is_constant()) return MultiPoly<F>(sp, F(1));
    std::size_t x = *highest_variable(a, b);
    if (!a.involves(x)) return gcd(a, content_in(b, x));
    if (!b.involves(x)) return gcd(content_in(a, x), b);
    MultiPoly<F> ca = content_in(a, x), cb = content_in(b, x);
    MultiPoly<F> pa = *divide_exact(a, ca), pb = *divide_exact(b, cb);
    return normalize(gcd(ca, cb) * subresultant_gcd(pa, pb, x));
}

inline mpz_class max_norm(const MultiPoly<Rational>& p) {
    mpz_class m = 0;
    for (const auto& t : p.terms()) {
        mpz_class v = abs(t.coeff.numerator());
        if (v > m) m = v;
    }
    return m;
}

inline mpz_class integer_content(const MultiPoly<Rational>& p) {
    mpz_class g = 0;
    for (const auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.value().get_num_mpz_t());
    return g;
}

/// Integer polynomial divided by its integer content, leading coefficient positive.
inline MultiPoly<Rational> integer_primitive(const MultiPoly<Rational>& p) {
    mpz_class c = integer_content(p);
    if (p.leading().coeff.sign() < 0) c = -c;
    return p / Rational(c);
}

/// Heuristic gcd over Z[vars]; returns nullopt when it gives up.
inline std::optional<MultiPoly<Rational>> heuristic_gcd_integer(const MultiPoly<Rational>& a,
                                                                const MultiPoly<Rational>& b) {
    const SpacePtr& sp = a.space();
    mpz_class ca = integer_content(a), cb = integer_content(b), c;
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    auto v = highest_variable(a, b);
    if (!v) return MultiPoly<Rational>(sp, Rational(c));
    std::size_t x = *v;
    MultiPoly<Rational> pa = a / Rational(ca), pb = b / Rational(cb);
    if (pa.leading().coeff.sign() < 0) pa = -pa;
    if (pb.leading().coeff.sign() < 0) pb = -pb;

    mpz_class na = max_norm(pa), nb = max_norm(pb);
    mpz_class xi = 2 * (na < nb ? na : nb) + 29;
    unsigned maxdeg = std::max(pa.degree_in(x), pb.degree_in(x));
    constexpr std::size_t kBitLimit = 4000000;
    for (int attempt = 0; attempt < 6; ++attempt) {
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) * (maxdeg + 1) > kBitLimit) return std::nullopt;
        std::vector<mpz_class> pw(maxdeg + 1);
        pw[0] = 1;
        for (unsigned k = 1; k <= maxdeg; ++k) pw[k] = pw[k - 1] * xi;
        auto eval = [&](const MultiPoly<Rational>& p) {
            std::vector<Term<Rational>> terms;
            terms.reserve(p.size());
            for (const auto& t : p.terms()) {
                Monomial m = t.mono;
                unsigned e = m[x];
                m.set(x, 0);
                terms.push_back({m, Rational(mpz_class(t.coeff.numerator() * pw[e]))});
            }
            return MultiPoly<Rational>::from_terms(sp, std::move(terms));
        };
        MultiPoly<Rational> ea = eval(pa), eb = eval(pb);
        if (!ea.is_zero() && !eb.is_zero()) {
            auto gamma = heuristic_gcd_integer(ea, eb);
            if (!gamma) return std::nullopt;
            // xi-adic reconstruction with symmetric digits
            std::vector<Term<Rational>> terms;
            mpz_class half = xi / 2;
            for (const auto& t : gamma->terms()) {
                mpz_class n = t.coeff.numerator();
                unsigned e = 0;
                while (n != 0) {
                    mpz_class digit;
                    mpz_fdiv_r(digit.get_mpz_t(), n.get_mpz_t(), xi.get_mpz_t());
                    if (digit > half) digit -= xi;
                    if (digit != 0) {
                        Monomial m = t.mono;
                        m.set(x, e);
                        terms.push_back({m, Rational(digit)});
                    }
                    n = (n - digit) / xi;
                    ++e;
                }
            }
            MultiPoly<Rational> g = MultiPoly<Rational>::from_terms(sp, std::move(terms));
            if (!g.is_zero()) {
                g = integer_primitive(g);
                if (divides(g, pa) && divides(g, pb)) return g * Rational(c);
            }
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

}  // namespace detail

/// Normalized greatest common divisor; gcd(0, q) = normalize(q).
template <Field F>
MultiPoly<F> gcd(const MultiPoly<F>& a, const MultiPoly<F>& b) {
    if (a.is_zero()) return normalize(b);
    if (b.is_zero()) return normalize(a);
    SpacePtr sp = a.space();
    if (!same_space(sp, b.space())) throw UsageError("polynomials live in different variable spaces");
    Monomial ma = monomial_content(a), mb = monomial_content(b);
    Monomial m = Monomial::gcd(ma, mb);
    MultiPoly<F> ra = detail::strip_monomial(a, ma), rb = detail::strip_monomial(b, mb);
    MultiPoly<F> head(sp, m, F(1));
    if (ra.is_constant() || rb.is_constant()) return head;
    if (divides(normalize(rb), ra)) return normalize(head * rb);
    if (divides(normalize(ra), rb)) return normalize(head * ra);
    if constexpr (std::is_same_v<F, Rational>) {
        MultiPoly<Rational> ia = ra / normalizer(ra), ib = rb / normalizer(rb);
        if (auto g = detail::heuristic_gcd_integer(ia, ib)) return normalize(head * *g);
    }
    return normalize(head * detail::recursive_gcd(ra, rb));
}

/// Splits p = content * primitive where content only involves variables
/// outside `block` and primitive is normalized.
template <Field F>
std::pair<MultiPoly<F>, MultiPoly<F>> content_primitive(const MultiPoly<F>& p, std::size_t block) {
    if (p.is_zero()) throw UsageError("content of the zero polynomial");
    const auto& sp = *p.space();
    std::size_t off = sp.block_offset(block), n = sp.block_size(block);
    std::unordered_map<Monomial, std::vector<Term<F>>, MonomialHash> groups;
    std::vector<Monomial> order;
    for (const auto& t : p.terms()) {
        Monomial key, rest = t.mono;
        for (std::size_t v = off; v < off + n; ++v) {
            key.set(v, t.mono[v]);
            rest.set(v, 0);
        }
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh) order.push_back(key);
        it->second.push_back({rest, t.coeff});
    }
    MultiPoly<F> content(p.space());
    for (const auto& key : order) {
        content = gcd(content, MultiPoly<F>::from_terms(p.space(), groups[key]));
        if (content.is_one()) break;
    }
    MultiPoly<F> prim = *divide_exact(p, content);
    F c = normalizer(prim);
    return {content * c, prim / c};
}

}  // namespace elimres
