#pragma once

// Exact determinants and ranks of polynomial matrices, the determinant of a
// generically exact complex as an alternating quotient of block
// determinants, and gcds of maximal minors.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "elimres/complexes.hpp"
#include "elimres/gcd.hpp"
#include "elimres/matrix.hpp"

namespace elimres {

class NotGenericallyExact : public PreconditionError {
public:
    explicit NotGenericallyExact(const std::string& what) : PreconditionError("generic exactness", what) {}
};

class DivisionNotExact : public InternalError {
public:
    using InternalError::InternalError;
};

namespace detail {

inline constexpr std::uint64_t kProbeSeed = 0x5eed5eedULL;

template <Field F>
F random_scalar(std::mt19937_64& rng, const F& like) {
    std::uniform_int_distribution<long> dist(-997, 997);
    long v = dist(rng);
    if (v == 0) v = 1009;
    return scalar_like(v, like);
}

/// Some nonzero coefficient of the matrix, to fix the prime modulus of probes.
template <Field F>
F coefficient_sample(const PolyMatrix<F>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) return m(i, j).terms().front().coeff;
    return F(1);
}

template <Field F>
std::vector<F> random_point(const SpacePtr& space, std::mt19937_64& rng, const F& like) {
    std::vector<F> pt;
    if (!space) return pt;
    for (std::size_t v = 0; v < space->size(); ++v) pt.push_back(random_scalar(rng, like));
    return pt;
}

/// Entry weight for pivot choice: fewer terms and lower degree first.
template <Field F>
std::size_t entry_cost(const MultiPoly<F>& p) {
    return p.size() * 64 + p.total_degree();
}

/// Fraction-free elimination on a square polynomial matrix (full pivoting on
/// entry size, exact division by the previous pivot). Returns det.
template <Field F>
MultiPoly<F> bareiss(std::vector<std::vector<MultiPoly<F>>> a, const SpacePtr& space) {
    std::size_t n = a.size();
    MultiPoly<F> prev(space, F(1));
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t bi = n, bj = n, best = 0;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j) {
                if (a[i][j].is_zero()) continue;
                std::size_t c = entry_cost(a[i][j]);
                if (bi == n || c < best) {
                    bi = i;
                    bj = j;
                    best = c;
                }
            }
        if (bi == n) return MultiPoly<F>(space);
        if (bi != k) {
            std::swap(a[bi], a[k]);
            negate = !negate;
        }
        if (bj != k) {
            for (auto& row : a) std::swap(row[bj], row[k]);
            negate = !negate;
        }
        const MultiPoly<F> piv = a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const MultiPoly<F> aik = a[i][k];
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly<F> num = piv * a[i][j];
                if (!aik.is_zero() && !a[k][j].is_zero()) num -= aik * a[k][j];
                if (prev.is_one()) {
                    a[i][j] = std::move(num);
                } else {
                    auto q = divide_exact(num, prev);
                    if (!q) throw DivisionNotExact("fraction-free elimination lost exactness");
                    a[i][j] = std::move(*q);
                }
            }
            a[i][k] = MultiPoly<F>(space);
        }
        prev = piv;
    }
    MultiPoly<F> d = n ? a[n - 1][n - 1] : MultiPoly<F>(space, F(1));
    return negate ? -d : d;
}

}  // namespace detail

/// Exact determinant. Constant pivots are eliminated first over the field;
/// the remaining block goes through fraction-free elimination.
template <Field F>
MultiPoly<F> det(const PolyMatrix<F>& m) {
    if (!m.square()) throw UsageError("determinant of a non-square matrix");
    const SpacePtr& space = m.space();
    std::size_t n = m.rows();
    if (n == 0) return MultiPoly<F>(space, F(1));
    if (m.is_scalar()) return MultiPoly<F>(space, scalar_det(m.constants()));

    std::vector<std::vector<MultiPoly<F>>> a(n, std::vector<MultiPoly<F>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);

    std::vector<std::size_t> rows(n), cols(n);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    F factor(1);
    bool negate = false;
    // Phase A: Markowitz-style choice among nonzero constant entries.
    while (!rows.empty()) {
        std::vector<std::size_t> row_count(n, 0), col_count(n, 0);
        for (auto i : rows)
            for (auto j : cols)
                if (!a[i][j].is_zero()) {
                    ++row_count[i];
                    ++col_count[j];
                }
        std::size_t bi = n, bj = n, best = 0;
        bool best_unit = false;
        for (auto i : rows)
            for (auto j : cols) {
                const auto& e = a[i][j];
                if (e.is_zero() || !e.is_constant()) continue;
                std::size_t cost = (row_count[i] - 1) * (col_count[j] - 1);
                bool unit = e.constant_value().is_one() || (-e.constant_value()).is_one();
                if (bi == n || cost < best || (cost == best && unit && !best_unit)) {
                    bi = i;
                    bj = j;
                    best = cost;
                    best_unit = unit;
                }
            }
        if (bi == n) break;
        std::size_t pr = static_cast<std::size_t>(std::find(rows.begin(), rows.end(), bi) - rows.begin());
        std::size_t pc = static_cast<std::size_t>(std::find(cols.begin(), cols.end(), bj) - cols.begin());
        if ((pr + pc) % 2 == 1) negate = !negate;
        F piv = a[bi][bj].constant_value();
        factor *= piv;
        F inv = F(1) / piv;
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pr));
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(pc));
        for (auto i : rows) {
            if (a[i][bj].is_zero()) continue;
            MultiPoly<F> f = a[i][bj] * inv;
            for (auto j : cols)
                if (!a[bi][j].is_zero()) a[i][j] -= f * a[bi][j];
        }
    }
    std::vector<std::vector<MultiPoly<F>>> rest(rows.size(), std::vector<MultiPoly<F>>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) rest[i][j] = a[rows[i]][cols[j]];
    MultiPoly<F> d = detail::bareiss(std::move(rest), space) * factor;
    return negate ? -d : d;
}

/// Rank over the fraction field of the parameter ring.
template <Field F>
std::size_t rank(const PolyMatrix<F>& m) {
    if (m.is_scalar()) return scalar_rank(m.constants());
    const SpacePtr& space = m.space();
    std::vector<std::vector<MultiPoly<F>>> a(m.rows(), std::vector<MultiPoly<F>>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
    std::size_t r = 0, R = m.rows(), C = m.cols();
    MultiPoly<F> prev(space, F(1));
    for (; r < std::min(R, C); ++r) {
        std::size_t bi = R, bj = C, best = 0;
        for (std::size_t i = r; i < R; ++i)
            for (std::size_t j = r; j < C; ++j) {
                if (a[i][j].is_zero()) continue;
                std::size_t c = detail::entry_cost(a[i][j]);
                if (bi == R || c < best) {
                    bi = i;
                    bj = j;
                    best = c;
                }
            }
        if (bi == R) break;
        std::swap(a[bi], a[r]);
        if (bj != r)
            for (auto& row : a) std::swap(row[bj], row[r]);
        const MultiPoly<F> piv = a[r][r];
        for (std::size_t i = r + 1; i < R; ++i) {
            const MultiPoly<F> air = a[i][r];
            for (std::size_t j = r + 1; j < C; ++j) {
                MultiPoly<F> num = piv * a[i][j];
                if (!air.is_zero() && !a[r][j].is_zero()) num -= air * a[r][j];
                auto q = divide_exact(num, prev);
                if (!q) throw DivisionNotExact("fraction-free rank elimination lost exactness");
                a[i][j] = std::move(*q);
            }
            a[i][r] = MultiPoly<F>(space);
        }
        prev = piv;
    }
    return r;
}

/// Value of the determinant of a complex: `raw` is the exact quotient of the
/// chosen block determinants (sign depends on the choice), `normalized` its
/// primitive-positive form.
template <Field F>
struct ComplexDeterminant {
    MultiPoly<F> raw;
    MultiPoly<F> normalized;
    std::vector<std::size_t> block_sizes;  // size of the square block taken from each differential
};

/// Determinant of a generically exact complex: with R_0 all rows of term 0,
/// choose columns J_i of differential i+1 so that the block (R_i, J_i) is
/// nonsingular, set R_{i+1} to the columns outside J_i, and return
/// prod_i det(block_i)^{(-1)^i}.
template <Field F>
ComplexDeterminant<F> determinant_of_complex(const FreeComplex<F>& c, std::uint64_t seed = detail::kProbeSeed) {
    const SpacePtr& space = c.space;
    std::size_t N = c.dims.size();
    while (N > 1 && c.dims[N - 1] == 0) --N;
    if (N > 5) throw UsageError("determinant of a complex supports at most five nonzero terms");
    if (N == 1) {
        if (c.dims[0] != 0) throw NotGenericallyExact("single nonzero term");
        return {MultiPoly<F>(space, F(1)), MultiPoly<F>(space, F(1)), {}};
    }
    F like(1);
    for (const auto& d : c.differentials)
        if (!d.is_zero()) {
            like = detail::coefficient_sample(d);
            break;
        }
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 5; ++attempt) {
        std::vector<F> pt = detail::random_point(space, rng, like);
        std::vector<std::vector<std::size_t>> row_sets, col_sets;
        std::vector<std::size_t> R(c.dims[0]);
        std::iota(R.begin(), R.end(), 0);
        bool ok = true;
        for (std::size_t i = 0; i + 1 < N && ok; ++i) {
            const auto& d = c.differentials[i];
            std::vector<std::size_t> all_cols(d.cols());
            std::iota(all_cols.begin(), all_cols.end(), 0);
            ScalarMatrix<F> num = d.submatrix(R, all_cols).evaluate_at(pt);
            Elimination<F> el = eliminate(num);
            if (el.rank != R.size()) {
                ok = false;
                break;
            }
            std::vector<std::size_t> J = el.pivot_cols;
            std::sort(J.begin(), J.end());
            row_sets.push_back(R);
            col_sets.push_back(J);
            std::vector<std::size_t> next;
            for (std::size_t q = 0; q < d.cols(); ++q)
                if (!std::binary_search(J.begin(), J.end(), q)) next.push_back(q);
            R = std::move(next);
        }
        if (!ok || !R.empty()) continue;

        MultiPoly<F> numerator(space, F(1)), denominator(space, F(1));
        ComplexDeterminant<F> out;
        for (std::size_t i = 0; i < row_sets.size(); ++i) {
            MultiPoly<F> di = det(c.differentials[i].submatrix(row_sets[i], col_sets[i]));
            out.block_sizes.push_back(row_sets[i].size());
            if (di.is_zero()) throw InternalError("probe-certified block has zero determinant");
            if (i % 2 == 0)
                numerator *= di;
            else
                denominator *= di;
        }
        auto q = divide_exact(numerator, denominator);
        if (!q) throw DivisionNotExact("determinant of complex: quotient is not a polynomial");
        out.raw = std::move(*q);
        out.normalized = normalize(out.raw);
        return out;
    }
    throw NotGenericallyExact("no nonsingular block selection found at 5 random parameter points");
}

struct MinorOptions {
    std::size_t min_minors = 5;   // at least this many minors, unless fewer exist
    std::size_t stable_run = 3;   // stop once the gcd survives this many minors unchanged
    std::optional<std::size_t> exact_count;  // force exactly this many minors
    std::size_t exhaustive_limit = 64;        // enumerate all subsets when at most this many
    std::uint64_t seed = detail::kProbeSeed;
};

template <Field F>
struct MinorGcd {
    MultiPoly<F> gcd;        // normalized; zero when the matrix rank is below the target size
    std::size_t minors = 0;  // number of minors folded in
    bool exhaustive = false;
};

/// gcd of maximal minors of size `target`: a deterministic first choice of
/// cheap columns, then randomized choices, each certified nonsingular at a
/// random parameter point.
template <Field F>
MinorGcd<F> gcd_of_maximal_minors(const PolyMatrix<F>& m, std::size_t target, const MinorOptions& opt = {}) {
    const SpacePtr& space = m.space();
    if (target > std::min(m.rows(), m.cols())) throw UsageError("minor size exceeds the matrix dimensions");
    MinorGcd<F> out;
    out.gcd = MultiPoly<F>(space);
    if (target == 0) {
        out.gcd = MultiPoly<F>(space, F(1));
        return out;
    }
    if (m.cols() < m.rows()) return gcd_of_maximal_minors(m.transpose(), target, opt);

    if (m.is_scalar()) {
        out.gcd = scalar_rank(m.constants()) >= target ? MultiPoly<F>(space, F(1)) : MultiPoly<F>(space);
        out.minors = 1;
        return out;
    }

    F like = detail::coefficient_sample(m);
    std::mt19937_64 rng(opt.seed);
    std::vector<F> pt = detail::random_point(space, rng, like);
    std::vector<std::size_t> all_rows(m.rows()), all_cols(m.cols());
    std::iota(all_rows.begin(), all_rows.end(), 0);
    std::iota(all_cols.begin(), all_cols.end(), 0);
    ScalarMatrix<F> probe = m.evaluate_at(pt);
    std::size_t numeric_rank = scalar_rank(probe);
    for (int retry = 0; numeric_rank < target && retry < 3; ++retry) {
        pt = detail::random_point(space, rng, like);
        probe = m.evaluate_at(pt);
        numeric_rank = scalar_rank(probe);
    }
    if (numeric_rank < target && rank(m) < target) return out;

    std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> seen;
    std::size_t unchanged = 0;
    auto fold = [&](const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) {
        MultiPoly<F> d = det(m.submatrix(rs, cs));
        if (d.is_zero()) return;
        ++out.minors;
        if (out.gcd.is_zero()) {
            out.gcd = normalize(d);
            unchanged = 0;
        } else if (divides(out.gcd, d)) {
            ++unchanged;
        } else {
            out.gcd = gcd(out.gcd, d);
            unchanged = 0;
        }
    };
    auto want_more = [&]() {
        if (opt.exact_count) return out.minors < *opt.exact_count;
        if (!out.gcd.is_zero() && out.gcd.is_constant()) return false;
        return out.minors < opt.min_minors || unchanged < opt.stable_run;
    };

    // Small instances: every minor.
    double count = 1;
    for (std::size_t i = 0; i < target; ++i)
        count *= static_cast<double>(m.cols() - i) / static_cast<double>(i + 1);
    double row_count = 1;
    for (std::size_t i = 0; i < target; ++i)
        row_count *= static_cast<double>(m.rows() - i) / static_cast<double>(i + 1);
    if (count * row_count <= static_cast<double>(opt.exhaustive_limit) && !opt.exact_count) {
        for (const auto& rs : detail::subsets(m.rows(), target))
            for (const auto& cs : detail::subsets(m.cols(), target)) fold(rs, cs);
        out.exhaustive = true;
        return out;
    }

    // Cost of a column: total size of its entries.
    std::vector<std::size_t> cost(m.cols(), 0);
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (!m(i, j).is_zero()) cost[j] += detail::entry_cost(m(i, j));
    std::vector<std::size_t> order = all_cols;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cost[a] < cost[b]; });

    // Rows: all of them when the target is the row count, else a probe-chosen set.
    auto choose_rows = [&](const std::vector<std::size_t>& row_order) {
        if (target == m.rows()) return all_rows;
        ScalarMatrix<F> t(m.cols(), m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = probe(row_order[i], j);
        auto el = eliminate(t);
        std::vector<std::size_t> rs;
        for (std::size_t k = 0; k < target && k < el.pivot_cols.size(); ++k) rs.push_back(row_order[el.pivot_cols[k]]);
        std::sort(rs.begin(), rs.end());
        return rs;
    };
    auto choose_cols = [&](const std::vector<std::size_t>& rs, const std::vector<std::size_t>& col_order) {
        ScalarMatrix<F> s(rs.size(), col_order.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < col_order.size(); ++j) s(i, j) = probe(rs[i], col_order[j]);
        auto el = eliminate(s);
        std::vector<std::size_t> cs;
        for (auto pc : el.pivot_cols) cs.push_back(col_order[pc]);
        std::sort(cs.begin(), cs.end());
        return cs;
    };

    std::size_t stale = 0;
    for (std::size_t attempt = 0; want_more() && stale < 50; ++attempt) {
        std::vector<std::size_t> col_order = order, row_order = all_rows;
        if (attempt > 0) {
            // shuffle within cost classes; every third attempt shuffle everything
            std::shuffle(col_order.begin(), col_order.end(), rng);
            if (attempt % 3 != 0)
                std::stable_sort(col_order.begin(), col_order.end(),
                                 [&](std::size_t a, std::size_t b) { return cost[a] < cost[b]; });
            std::shuffle(row_order.begin(), row_order.end(), rng);
        }
        std::vector<std::size_t> rs = choose_rows(row_order);
        if (rs.size() < target) break;
        std::vector<std::size_t> cs = choose_cols(rs, col_order);
        if (cs.size() < target) {
            ++stale;
            continue;
        }
        if (!seen.emplace(rs, cs).second) {
            ++stale;
            continue;
        }
        stale = 0;
        fold(rs, cs);
    }
    return out;
}

}  // namespace elimres
