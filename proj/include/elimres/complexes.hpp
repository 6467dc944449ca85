#pragma once

// Graded pieces of Koszul and Eagon-Northcott complexes on a product of
// projective spaces, and twist selection by cohomology vanishing.

#include <functional>
#include <vector>

#include "elimres/grading.hpp"
#include "elimres/matrix.hpp"

namespace elimres {

/// Term p of a complex of sheaves as a list of line bundle shifts O(a).
struct ComplexTemplate {
    std::vector<int> dims;                          // projective dimensions l_t
    std::vector<std::vector<MultiDegree>> shifts;   // shifts[p] = summands of term p
};

/// Global sections of a complex at a twist. Term 0 is the rightmost term;
/// differentials[p - 1] maps term p to term p - 1.
template <Field F>
struct FreeComplex {
    SpacePtr space;
    MultiDegree twist;
    std::vector<std::vector<MultiDegree>> pieces;  // graded piece degrees of term p
    std::vector<std::size_t> dims;
    std::vector<PolyMatrix<F>> differentials;

    std::size_t length() const noexcept { return dims.size(); }
};

struct CohomologyFailure {
    std::size_t term;
    int degree;         // cohomological degree j > 0
    MultiDegree piece;  // the twisted summand O(a)
};

struct TwistReport {
    MultiDegree twist;
    bool valid = false;
    std::vector<CohomologyFailure> failing;
};

/// H^j(P^{l_1} x ... x P^{l_r}, O(a)) != 0, by Kunneth over the factor
/// criterion: H^{j_t}(P^l, O(a_t)) != 0 iff (j_t = 0, a_t >= 0) or (j_t = l, a_t < -l).
inline bool cohomology_nonvanishing(const std::vector<int>& dims, const MultiDegree& a, int j) {
    if (j < 0) throw UsageError("cohomological degree must be non-negative");
    if (a.size() != dims.size()) throw UsageError("multidegree length does not match the factors");
    std::vector<int> reachable{0};
    for (std::size_t t = 0; t < dims.size(); ++t) {
        std::vector<int> next;
        for (int acc : reachable) {
            if (a[t] >= 0) next.push_back(acc);
            if (a[t] < -dims[t]) next.push_back(acc + dims[t]);
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        reachable = std::move(next);
    }
    return std::find(reachable.begin(), reachable.end(), j) != reachable.end();
}

inline TwistReport check_twist(const ComplexTemplate& tpl, const MultiDegree& m) {
    TwistReport r;
    r.twist = m;
    int top = 0;
    for (int l : tpl.dims) top += l;
    for (std::size_t p = 0; p < tpl.shifts.size(); ++p)
        for (const auto& s : tpl.shifts[p]) {
            MultiDegree a = m + s;
            for (int j = 1; j <= top; ++j)
                if (cohomology_nonvanishing(tpl.dims, a, j)) r.failing.push_back({p, j, a});
        }
    r.valid = r.failing.empty();
    return r;
}

/// Default search bound: largest absolute shift plus the number of factors.
inline int default_twist_bound(const ComplexTemplate& tpl) {
    int b = 0;
    for (const auto& term : tpl.shifts)
        for (const auto& s : term)
            for (int x : s.d) b = std::max(b, std::abs(x));
    return b + static_cast<int>(tpl.dims.size());
}

/// Lexicographically smallest twist in [0, bound]^r with all higher
/// cohomology of all terms vanishing.
inline TwistReport min_valid_twist(const ComplexTemplate& tpl, std::optional<int> bound = std::nullopt) {
    int b = bound.value_or(default_twist_bound(tpl));
    std::size_t r = tpl.dims.size();
    if (b < 0 || r == 0) throw UsageError("empty twist search box");
    MultiDegree m(std::vector<int>(r, 0));
    while (true) {
        TwistReport rep = check_twist(tpl, m);
        if (rep.valid) return rep;
        std::size_t t = r;
        while (t-- > 0) {
            if (m[t] < b) {
                ++m[t];
                break;
            }
            m[t] = 0;
        }
        if (t == static_cast<std::size_t>(-1)) break;
    }
    throw PreconditionError("twist", "no valid twist in the search box [0," + std::to_string(b) + "]^" + std::to_string(r));
}

namespace detail {

/// k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        while (i-- > 0) {
            if (cur[i] < n - k + i) {
                ++cur[i];
                for (std::size_t j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
                break;
            }
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

/// Multi-indices of total degree deg over n slots, lexicographically descending.
inline std::vector<std::vector<int>> multi_indices(std::size_t n, int deg) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == n) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[i] = e;
            rec(i + 1, left - e);
        }
    };
    if (n > 0 && deg >= 0) rec(0, deg);
    return out;
}

template <Field F>
FreeComplex<F> assemble(const SpacePtr& space, const MultiDegree& m, const std::vector<std::vector<MultiDegree>>& shifts,
                        const std::vector<std::vector<std::vector<MultiPoly<F>>>>& entries) {
    FreeComplex<F> c;
    c.space = space;
    c.twist = m;
    for (const auto& term : shifts) {
        std::vector<MultiDegree> pieces;
        std::size_t dim = 0;
        for (const auto& s : term) {
            pieces.push_back(m + s);
            dim += basis(*space, pieces.back()).size();
        }
        c.pieces.push_back(std::move(pieces));
        c.dims.push_back(dim);
    }
    for (std::size_t p = 1; p < shifts.size(); ++p)
        c.differentials.push_back(graded_block_matrix<F>(space, c.pieces[p - 1], c.pieces[p], entries[p - 1]));
    return c;
}

}  // namespace detail

inline ComplexTemplate koszul_template(const std::vector<int>& dims, const std::vector<MultiDegree>& degrees) {
    ComplexTemplate t;
    t.dims = dims;
    MultiDegree zero(std::vector<int>(dims.size(), 0));
    for (std::size_t p = 0; p <= degrees.size(); ++p) {
        std::vector<MultiDegree> term;
        for (const auto& I : detail::subsets(degrees.size(), p)) {
            MultiDegree s = zero;
            for (auto i : I) s -= degrees[i];
            term.push_back(s);
        }
        t.shifts.push_back(std::move(term));
    }
    return t;
}

/// Koszul complex of f at twist m: term p has one summand S(m - sum_{i in I} d_i)
/// per p-subset I (lex order); e_I maps to sum_k (-1)^k f_{i_k} e_{I \ i_k}.
template <Field F>
FreeComplex<F> koszul(const SpacePtr& space, const std::vector<MultiPoly<F>>& f, const MultiDegree& m) {
    std::vector<MultiDegree> degrees;
    for (const auto& p : f) {
        if (p.is_zero()) throw PreconditionError("homogeneity", "Koszul complex of a zero form");
        degrees.push_back(geometric_multidegree(p));
    }
    ComplexTemplate tpl = koszul_template(space->projective_dims(), degrees);
    std::vector<std::vector<std::vector<MultiPoly<F>>>> entries;
    for (std::size_t p = 1; p <= f.size(); ++p) {
        auto targets = detail::subsets(f.size(), p - 1);
        auto sources = detail::subsets(f.size(), p);
        std::vector<std::vector<MultiPoly<F>>> e(targets.size(), std::vector<MultiPoly<F>>(sources.size(), MultiPoly<F>(space)));
        for (std::size_t s = 0; s < sources.size(); ++s) {
            const auto& I = sources[s];
            for (std::size_t k = 0; k < I.size(); ++k) {
                std::vector<std::size_t> J;
                for (std::size_t q = 0; q < I.size(); ++q)
                    if (q != k) J.push_back(I[q]);
                auto it = std::lower_bound(targets.begin(), targets.end(), J);
                e[static_cast<std::size_t>(it - targets.begin())][s] = (k % 2 == 0) ? f[I[k]] : -f[I[k]];
            }
        }
        entries.push_back(std::move(e));
    }
    return detail::assemble<F>(space, m, tpl.shifts, entries);
}

/// Basis element of an Eagon-Northcott term: column subset J and a
/// multi-index alpha over the rows.
struct EagonNorthcottIndex {
    std::vector<std::size_t> columns;
    std::vector<int> alpha;
    friend bool operator==(const EagonNorthcottIndex&, const EagonNorthcottIndex&) = default;
};

inline std::vector<std::vector<EagonNorthcottIndex>> eagon_northcott_indices(std::size_t n, std::size_t ncols) {
    std::vector<std::vector<EagonNorthcottIndex>> terms;
    terms.push_back({EagonNorthcottIndex{}});
    for (std::size_t p = 1; n + p - 1 <= ncols; ++p) {
        std::vector<EagonNorthcottIndex> term;
        for (const auto& J : detail::subsets(ncols, n + p - 1))
            for (const auto& a : detail::multi_indices(n, static_cast<int>(p) - 1)) term.push_back({J, a});
        terms.push_back(std::move(term));
    }
    return terms;
}

/// Shifts of the Eagon-Northcott complex of a map with source degrees d
/// (columns) and target degrees k (rows): E_0 = O, and for p >= 1 the summand
/// (J, alpha) is O(-sum_J d_j + sum_i alpha_i k_i + sum_i k_i).
inline ComplexTemplate eagon_northcott_template(const std::vector<int>& dims, const std::vector<MultiDegree>& d,
                                                const std::vector<MultiDegree>& k) {
    ComplexTemplate t;
    t.dims = dims;
    MultiDegree zero(std::vector<int>(dims.size(), 0)), ksum = zero;
    for (const auto& x : k) ksum += x;
    for (const auto& term : eagon_northcott_indices(k.size(), d.size())) {
        std::vector<MultiDegree> shifts;
        for (const auto& idx : term) {
            if (idx.columns.empty()) {
                shifts.push_back(zero);
                continue;
            }
            MultiDegree s = ksum;
            for (auto j : idx.columns) s -= d[j];
            for (std::size_t i = 0; i < k.size(); ++i) s += idx.alpha[i] * k[i];
            shifts.push_back(s);
        }
        t.shifts.push_back(std::move(shifts));
    }
    return t;
}

/// Determinant of the rows x columns submatrix of a polynomial matrix, by
/// cofactor expansion (used for the small maximal minors of input maps).
template <Field F>
MultiPoly<F> small_det(const std::vector<std::vector<MultiPoly<F>>>& a, const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& cols, const SpacePtr& space) {
    std::size_t n = rows.size();
    if (n == 0) return MultiPoly<F>(space, F(1));
    if (n == 1) return a[rows[0]][cols[0]];
    MultiPoly<F> acc(space);
    std::vector<std::size_t> rest(rows.begin() + 1, rows.end());
    for (std::size_t c = 0; c < n; ++c) {
        const auto& e = a[rows[0]][cols[c]];
        if (e.is_zero()) continue;
        std::vector<std::size_t> sub;
        for (std::size_t q = 0; q < n; ++q)
            if (q != c) sub.push_back(cols[q]);
        MultiPoly<F> term = e * small_det(a, rest, sub, space);
        if (c % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

/// Maximal minor of the map on the column subset J (columns in increasing order).
template <Field F>
MultiPoly<F> maximal_minor(const GradedMap<F>& phi, const std::vector<std::size_t>& J) {
    std::vector<std::size_t> rows(phi.rows());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return small_det(phi.entries, rows, J, phi.space);
}

/// Eagon-Northcott complex of an n x (n+s) graded map at twist m. E_1 -> E_0
/// sends e_J to the maximal minor on J; for p >= 2, (J, alpha) maps to
/// sum_k sum_{i : alpha_i > 0} (-1)^k phi(i, j_k) (J \ j_k, alpha - e_i).
template <Field F>
FreeComplex<F> eagon_northcott(const GradedMap<F>& phi, const MultiDegree& m) {
    phi.validate();
    std::size_t n = phi.rows(), ncols = phi.cols();
    if (n == 0 || ncols < n) throw UsageError("Eagon-Northcott complex needs an n x (n+s) map with s >= 0");
    const SpacePtr& space = phi.space;
    ComplexTemplate tpl = eagon_northcott_template(space->projective_dims(), phi.source_degrees, phi.target_degrees);
    auto idx = eagon_northcott_indices(n, ncols);
    std::vector<std::vector<std::vector<MultiPoly<F>>>> entries;
    for (std::size_t p = 1; p < idx.size(); ++p) {
        const auto& targets = idx[p - 1];
        const auto& sources = idx[p];
        std::vector<std::vector<MultiPoly<F>>> e(targets.size(), std::vector<MultiPoly<F>>(sources.size(), MultiPoly<F>(space)));
        for (std::size_t s = 0; s < sources.size(); ++s) {
            const auto& src = sources[s];
            if (p == 1) {
                e[0][s] = maximal_minor(phi, src.columns);
                continue;
            }
            for (std::size_t k = 0; k < src.columns.size(); ++k) {
                std::vector<std::size_t> J;
                for (std::size_t q = 0; q < src.columns.size(); ++q)
                    if (q != k) J.push_back(src.columns[q]);
                for (std::size_t i = 0; i < n; ++i) {
                    if (src.alpha[i] == 0) continue;
                    const auto& entry = phi.entries[i][src.columns[k]];
                    if (entry.is_zero()) continue;
                    EagonNorthcottIndex tgt{J, src.alpha};
                    --tgt.alpha[i];
                    auto it = std::find(targets.begin(), targets.end(), tgt);
                    auto& cell = e[static_cast<std::size_t>(it - targets.begin())][s];
                    if (k % 2 == 0)
                        cell += entry;
                    else
                        cell -= entry;
                }
            }
        }
        entries.push_back(std::move(e));
    }
    return detail::assemble<F>(space, m, tpl.shifts, entries);
}

}  // namespace elimres
