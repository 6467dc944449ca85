#pragma once

// Monomial bases of graded pieces S(d) on a product of projective spaces and
// the matrices of graded maps between sums of such pieces.

#include <unordered_map>
#include <vector>

#include "elimres/matrix.hpp"
#include "elimres/poly.hpp"

namespace elimres {

struct BasisIndex {
    MultiDegree twist;
    std::vector<Monomial> monomials;  // descending graded-lex
    std::unordered_map<Monomial, std::size_t, MonomialHash> position;

    std::size_t size() const noexcept { return monomials.size(); }
    bool empty() const noexcept { return monomials.empty(); }
};

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Dimension of S(d): product of C(l_t + d_t, l_t), zero if some d_t < 0.
inline std::size_t graded_dimension(const std::vector<int>& dims, const MultiDegree& d) {
    std::size_t n = 1;
    for (std::size_t t = 0; t < dims.size(); ++t) {
        if (d[t] < 0) return 0;
        n *= binomial(static_cast<std::size_t>(dims[t] + d[t]), static_cast<std::size_t>(dims[t]));
    }
    return n;
}

namespace detail {

inline void block_monomials(std::size_t offset, std::size_t nvars, unsigned degree, Monomial current,
                            std::size_t var, std::vector<Monomial>& out) {
    if (var + 1 == nvars) {
        current.set(offset + var, degree);
        out.push_back(current);
        return;
    }
    for (unsigned e = degree + 1; e-- > 0;) {
        Monomial next = current;
        next.set(offset + var, e);
        block_monomials(offset, nvars, degree - e, next, var + 1, out);
    }
}

}  // namespace detail

/// All monomials of exact multidegree d on the geometric blocks.
inline BasisIndex basis(const VariableSpace& space, const MultiDegree& d) {
    if (d.size() != space.num_geometric()) throw UsageError("multidegree length does not match the geometric blocks");
    BasisIndex b;
    b.twist = d;
    if (!d.nonnegative()) return b;
    std::vector<Monomial> acc{Monomial{}};
    const auto& geo = space.geometric_blocks();
    for (std::size_t g = 0; g < geo.size(); ++g) {
        std::vector<Monomial> part;
        detail::block_monomials(space.block_offset(geo[g]), space.block_size(geo[g]), static_cast<unsigned>(d[g]),
                                Monomial{}, 0, part);
        std::vector<Monomial> next;
        next.reserve(acc.size() * part.size());
        for (const auto& a : acc)
            for (const auto& p : part) next.push_back(a * p);
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end(), GrlexGreater{});
    b.monomials = std::move(acc);
    for (std::size_t i = 0; i < b.monomials.size(); ++i) b.position.emplace(b.monomials[i], i);
    return b;
}

inline BasisIndex basis(const SpacePtr& space, const MultiDegree& d) { return basis(*space, d); }

inline std::string monomial_label(const VariableSpace& space, const Monomial& m) {
    std::string s;
    for (std::size_t v = 0; v < space.size(); ++v) {
        if (!m[v]) continue;
        if (!s.empty()) s += "*";
        s += space.name(v);
        if (m[v] > 1) s += "^" + std::to_string(m[v]);
    }
    return s.empty() ? "1" : s;
}

/// Coordinates of p in basis(d): one parameter-only polynomial per basis monomial.
template <Field F>
std::vector<MultiPoly<F>> coordinates(const MultiPoly<F>& p, const BasisIndex& b) {
    std::vector<std::vector<Term<F>>> parts(b.size());
    if (!p.is_zero()) {
        const auto& sp = *p.space();
        for (const auto& t : p.terms()) {
            auto [geo, par] = split_monomial(sp, t.mono);
            auto it = b.position.find(geo);
            if (it == b.position.end()) throw PreconditionError("homogeneity", "term outside the graded piece");
            parts[it->second].push_back({par, t.coeff});
        }
    }
    std::vector<MultiPoly<F>> out;
    out.reserve(b.size());
    for (auto& part : parts) out.push_back(MultiPoly<F>::from_terms(p.space(), std::move(part)));
    return out;
}

/// Matrix of the map sum_j S(source_j) -> sum_i S(target_i) given by the
/// polynomial matrix `entries` (target i, source j). Column (j, mu) holds
/// the coordinates of mu * entries(i, j) stacked over i.
template <Field F>
PolyMatrix<F> graded_block_matrix(const SpacePtr& space, const std::vector<MultiDegree>& target_degrees,
                                  const std::vector<MultiDegree>& source_degrees,
                                  const std::vector<std::vector<MultiPoly<F>>>& entries) {
    std::vector<BasisIndex> tb, sb;
    std::vector<std::size_t> row_off{0}, col_off{0};
    for (const auto& d : target_degrees) {
        tb.push_back(basis(*space, d));
        row_off.push_back(row_off.back() + tb.back().size());
    }
    for (const auto& d : source_degrees) {
        sb.push_back(basis(*space, d));
        col_off.push_back(col_off.back() + sb.back().size());
    }
    PolyMatrix<F> m(space, row_off.back(), col_off.back());
    bool multi_t = target_degrees.size() > 1, multi_s = source_degrees.size() > 1;
    for (std::size_t i = 0; i < tb.size(); ++i)
        for (const auto& mono : tb[i].monomials)
            m.row_labels().push_back((multi_t ? "[" + std::to_string(i) + "]" : "") + monomial_label(*space, mono));
    for (std::size_t j = 0; j < sb.size(); ++j)
        for (const auto& mono : sb[j].monomials)
            m.col_labels().push_back((multi_s ? "[" + std::to_string(j) + "]" : "") + monomial_label(*space, mono));

    for (std::size_t i = 0; i < tb.size(); ++i) {
        for (std::size_t j = 0; j < sb.size(); ++j) {
            const auto& p = entries.at(i).at(j);
            if (p.is_zero() || sb[j].empty() || tb[i].empty()) continue;
            std::vector<std::pair<Monomial, Monomial>> split;
            split.reserve(p.size());
            for (const auto& t : p.terms()) split.push_back(split_monomial(*space, t.mono));
            for (std::size_t c = 0; c < sb[j].size(); ++c) {
                std::unordered_map<std::size_t, std::vector<Term<F>>> acc;
                for (std::size_t k = 0; k < p.size(); ++k) {
                    Monomial row = sb[j].monomials[c] * split[k].first;
                    auto it = tb[i].position.find(row);
                    if (it == tb[i].position.end())
                        throw PreconditionError("homogeneity", "map entry has the wrong multidegree");
                    acc[it->second].push_back({split[k].second, p.terms()[k].coeff});
                }
                for (auto& [r, terms] : acc)
                    m(row_off[i] + r, col_off[j] + c) = MultiPoly<F>::from_terms(space, std::move(terms));
            }
        }
    }
    return m;
}

/// Matrix of (g_0, ..., g_s) -> sum g_i images[i] at twist m: rows basis(m),
/// columns the concatenation of basis(m - e_i).
template <Field F>
PolyMatrix<F> matrix_of_map(const std::vector<MultiDegree>& image_degrees, const std::vector<MultiPoly<F>>& images,
                            const MultiDegree& m, const SpacePtr& space) {
    if (image_degrees.size() != images.size()) throw UsageError("one degree per image is required");
    std::vector<MultiDegree> sources;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (!images[i].is_zero() && geometric_multidegree(images[i]) != image_degrees[i])
            throw PreconditionError("homogeneity", "image " + std::to_string(i) + " does not have its declared multidegree");
        sources.push_back(m - image_degrees[i]);
    }
    return graded_block_matrix<F>(space, {m}, sources, {images});
}

/// Same, with the multidegrees read off the (nonzero) images.
template <Field F>
PolyMatrix<F> matrix_of_map(const std::vector<MultiPoly<F>>& images, const MultiDegree& m) {
    if (images.empty()) throw UsageError("matrix_of_map needs at least one image");
    std::vector<MultiDegree> degs;
    for (const auto& p : images) {
        if (p.is_zero()) throw PreconditionError("homogeneity", "zero image has no multidegree");
        degs.push_back(geometric_multidegree(p));
    }
    return matrix_of_map(degs, images, m, images.front().space());
}

/// Polynomial matrix between twisted free modules: entry (i, j) maps the
/// source summand O(-d_j) to the target summand O(-k_i) and is zero or
/// homogeneous of multidegree d_j - k_i.
template <Field F>
struct GradedMap {
    SpacePtr space;
    std::vector<MultiDegree> source_degrees;  // d_j
    std::vector<MultiDegree> target_degrees;  // k_i
    std::vector<std::vector<MultiPoly<F>>> entries;

    GradedMap() = default;
    GradedMap(SpacePtr sp, std::vector<std::vector<MultiPoly<F>>> e, std::vector<MultiDegree> d,
              std::vector<MultiDegree> k)
        : space(std::move(sp)), source_degrees(std::move(d)), target_degrees(std::move(k)), entries(std::move(e)) {
        validate();
    }

    std::size_t rows() const noexcept { return target_degrees.size(); }
    std::size_t cols() const noexcept { return source_degrees.size(); }

    void validate() const {
        if (entries.size() != target_degrees.size()) throw UsageError("graded map: row count does not match target twists");
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].size() != source_degrees.size())
                throw UsageError("graded map: column count does not match source twists");
            for (std::size_t j = 0; j < entries[i].size(); ++j) {
                const auto& p = entries[i][j];
                if (p.is_zero()) continue;
                if (!same_space(p.space(), space)) throw UsageError("graded map entries live in a different space");
                auto deg = try_geometric_multidegree(p);
                if (!deg || *deg != source_degrees[j] - target_degrees[i])
                    throw PreconditionError("homogeneity", "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                               ") is not homogeneous of multidegree " +
                                                               (source_degrees[j] - target_degrees[i]).to_string());
            }
        }
    }
};

/// Infers a graded map from entries with target twists k (source degrees read
/// off the first nonzero entry of each column).
template <Field F>
GradedMap<F> graded_map_from_entries(const SpacePtr& space, std::vector<std::vector<MultiPoly<F>>> entries,
                                     std::vector<MultiDegree> k) {
    if (entries.empty() || entries[0].empty()) throw UsageError("graded map needs at least one entry");
    std::vector<MultiDegree> d;
    for (std::size_t j = 0; j < entries[0].size(); ++j) {
        std::optional<MultiDegree> dj;
        for (std::size_t i = 0; i < entries.size() && !dj; ++i) {
            if (entries[i].size() != entries[0].size()) throw UsageError("graded map rows have different lengths");
            if (!entries[i][j].is_zero()) dj = geometric_multidegree(entries[i][j]) + k.at(i);
        }
        if (!dj) throw UsageError("graded map column " + std::to_string(j) + " is zero");
        d.push_back(*dj);
    }
    return GradedMap<F>(space, std::move(entries), std::move(d), std::move(k));
}

}  // namespace elimres
