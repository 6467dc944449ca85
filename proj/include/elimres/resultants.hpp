#pragma once

// Sylvester, Dixon, determinantal Sylvester, determinantal Dixon and the
// two-curves determinantal resultant.

#include <string>
#include <vector>

#include "elimres/cayley.hpp"
#include "elimres/complexes.hpp"
#include "elimres/grading.hpp"

namespace elimres {

enum class ResultantMethod { square_det, complex_det, gcd_minors };

inline std::string to_string(ResultantMethod m) {
    switch (m) {
        case ResultantMethod::square_det: return "square_det";
        case ResultantMethod::complex_det: return "complex_det";
        case ResultantMethod::gcd_minors: return "gcd_minors";
    }
    return "unknown";
}

template <Field F>
struct LabeledMatrix {
    std::string label;
    PolyMatrix<F> matrix;
};

template <Field F>
struct ResultantOutput {
    MultiPoly<F> condition;  // primitive-positive (or monic) normalized
    MultiPoly<F> raw;        // value before normalization
    ResultantMethod method = ResultantMethod::square_det;
    MultiDegree twist;
    std::vector<LabeledMatrix<F>> matrices;
    std::optional<MultiPoly<F>> cross_check;  // determinant at the alternative twist
    std::vector<long> degrees;                // per-input degree metadata when known
    std::optional<long> total_degree;
    std::size_t minors_used = 0;
};

namespace detail {

template <Field F>
ResultantOutput<F> square_output(PolyMatrix<F> m, const MultiDegree& twist, std::string label) {
    if (!m.square())
        throw InternalError("expected a square matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    ResultantOutput<F> out;
    out.raw = det(m);
    out.condition = normalize(out.raw);
    out.method = ResultantMethod::square_det;
    out.twist = twist;
    out.matrices.push_back({std::move(label), std::move(m)});
    return out;
}

inline void require_block_shape(const VariableSpace& sp, const std::vector<int>& dims, const std::string& what) {
    if (sp.projective_dims() != dims) {
        std::string shape;
        for (std::size_t i = 0; i < dims.size(); ++i) shape += (i ? " x P^" : "P^") + std::to_string(dims[i]);
        throw UsageError(what + " needs geometric blocks " + shape);
    }
}

template <Field F>
MultiDegree require_degree(const MultiPoly<F>& p, const std::string& name) {
    if (p.is_zero()) throw PreconditionError("nonzero input", name + " is zero");
    auto d = try_geometric_multidegree(p);
    if (!d) throw PreconditionError("homogeneity", name + " is not homogeneous");
    return *d;
}

template <Field F>
bool same_value_up_to_scalar(const MultiPoly<F>& a, const MultiPoly<F>& b) {
    return normalize(a) == normalize(b);
}

}  // namespace detail

/// Determinant of a resultant complex taken at a valid twist. Such a complex
/// fails to be exact precisely when the resultant vanishes, so that case
/// yields zero instead of an error.
template <Field F>
ComplexDeterminant<F> resultant_of_complex(const FreeComplex<F>& c) {
    try {
        return determinant_of_complex(c);
    } catch (const NotGenericallyExact&) {
        MultiPoly<F> zero(c.space);
        return {zero, zero, {}};
    }
}

/// Sylvester resultant of two binary forms: determinant of the square map
/// S(m - d0) + S(m - d1) -> S(m) at m = d0 + d1 - 1.
template <Field F>
ResultantOutput<F> sylvester(const MultiPoly<F>& f0, const MultiPoly<F>& f1) {
    const SpacePtr& space = f0.space() ? f0.space() : f1.space();
    detail::require_block_shape(*space, {1}, "sylvester");
    MultiDegree d0 = detail::require_degree(f0, "f0"), d1 = detail::require_degree(f1, "f1");
    if (d0[0] < 1 || d1[0] < 1) throw PreconditionError("degree", "sylvester needs forms of degree at least 1");
    MultiDegree m{d0[0] + d1[0] - 1};
    auto out = detail::square_output(matrix_of_map<F>({d0, d1}, {f0, f1}, m, space), m, "sylvester");
    out.degrees = {d1[0], d0[0]};
    out.total_degree = d0[0] + d1[0];
    return out;
}

/// Dixon resultant of three forms of bidegree (d1, d2) on P^1 x P^1: square
/// matrices of size 6 d1 d2 at twists (2d1-1, 3d2-1) and (3d1-1, 2d2-1).
template <Field F>
ResultantOutput<F> dixon(const MultiPoly<F>& f0, const MultiPoly<F>& f1, const MultiPoly<F>& f2) {
    const SpacePtr& space = f0.space();
    detail::require_block_shape(*space, {1, 1}, "dixon");
    MultiDegree d = detail::require_degree(f0, "f0");
    if (detail::require_degree(f1, "f1") != d || detail::require_degree(f2, "f2") != d)
        throw PreconditionError("bidegree", "dixon needs three forms of the same bidegree");
    if (d[0] < 1 || d[1] < 1) throw PreconditionError("bidegree", "dixon needs bidegree at least (1,1)");
    MultiDegree first{2 * d[0] - 1, 3 * d[1] - 1}, second{3 * d[0] - 1, 2 * d[1] - 1};
    auto out = detail::square_output(matrix_of_map<F>({d, d, d}, {f0, f1, f2}, first, space), first, "dixon " + first.to_string());
    PolyMatrix<F> alt = matrix_of_map<F>({d, d, d}, {f0, f1, f2}, second, space);
    MultiPoly<F> alt_det = det(alt);
    if (!detail::same_value_up_to_scalar(alt_det, out.raw))
        throw InternalError("dixon determinants at the two twists disagree");
    out.cross_check = alt_det;
    out.matrices.push_back({"dixon " + second.to_string(), std::move(alt)});
    // Each column block has dim S(m - d) = 2 d1 d2 columns, which is the
    // degree in each form (the self-intersection of O(d1, d2) on P^1 x P^1).
    long e = 2L * d[0] * d[1];
    out.degrees = {e, e, e};
    out.total_degree = 3 * e;
    return out;
}

/// Signed maximal minors of an n x (n+1) map: image i is (-1)^i times the
/// minor with column i removed (0-indexed).
template <Field F>
std::vector<MultiPoly<F>> signed_maximal_minors(const GradedMap<F>& phi) {
    std::vector<MultiPoly<F>> out;
    for (std::size_t i = 0; i < phi.cols(); ++i) {
        std::vector<std::size_t> J;
        for (std::size_t j = 0; j < phi.cols(); ++j)
            if (j != i) J.push_back(j);
        MultiPoly<F> minor = maximal_minor(phi, J);
        out.push_back(i % 2 == 0 ? minor : -minor);
    }
    return out;
}

/// Maximal minors of an n x (n+s) map, column subsets in lexicographic order.
template <Field F>
std::vector<MultiPoly<F>> maximal_minors(const GradedMap<F>& phi) {
    std::vector<MultiPoly<F>> out;
    for (const auto& J : detail::subsets(phi.cols(), phi.rows())) out.push_back(maximal_minor(phi, J));
    return out;
}

/// Degree data of the determinantal Sylvester resultant.
struct DetSylvesterDegrees {
    std::vector<long> per_column;  // N_i = sum d - sum k - d_i
    long total;                    // n sum d - (n+1) sum k
};

inline DetSylvesterDegrees det_sylvester_degrees(const std::vector<int>& d, const std::vector<int>& k) {
    long sd = 0, sk = 0;
    for (int x : d) sd += x;
    for (int x : k) sk += x;
    DetSylvesterDegrees out;
    for (int x : d) out.per_column.push_back(sd - sk - x);
    long n = static_cast<long>(k.size());
    out.total = n * sd - (n + 1) * sk;
    return out;
}

/// Determinantal Sylvester resultant of an n x (n+1) map over P^1 with
/// column degrees d and row twists k (entry (i,j) of degree d_j - k_i).
template <Field F>
ResultantOutput<F> det_sylvester(const GradedMap<F>& phi, ResultantMethod method = ResultantMethod::complex_det) {
    phi.validate();
    const SpacePtr& space = phi.space;
    detail::require_block_shape(*space, {1}, "det-sylvester");
    std::size_t n = phi.rows();
    if (n == 0 || phi.cols() != n + 1) throw UsageError("det-sylvester needs an n x (n+1) matrix");
    std::vector<int> d, k;
    for (const auto& x : phi.source_degrees) d.push_back(x[0]);
    for (const auto& x : phi.target_degrees) k.push_back(x[0]);
    for (int dj : d)
        for (int ki : k)
            if (dj - ki <= 0) throw PreconditionError("degree", "det-sylvester needs d_j - k_i > 0 for all i, j");
    long sd = 0, sk = 0;
    for (int x : d) sd += x;
    for (int x : k) sk += x;
    int kmin = *std::min_element(k.begin(), k.end());
    bool equal_k = std::all_of(k.begin(), k.end(), [&](int x) { return x == k[0]; });

    ResultantOutput<F> out;
    auto meta = det_sylvester_degrees(d, k);
    if (equal_k) {
        MultiDegree m{static_cast<int>(sd - static_cast<long>(n + 1) * k[0] - 1)};
        std::vector<MultiPoly<F>> images = signed_maximal_minors(phi);
        std::vector<MultiDegree> degs;
        for (std::size_t i = 0; i < images.size(); ++i) degs.push_back(MultiDegree{static_cast<int>(sd - d[i] - static_cast<long>(n) * k[0])});
        out = detail::square_output(matrix_of_map<F>(degs, images, m, space), m, "det-sylvester");
    } else {
        MultiDegree m{static_cast<int>(sd - sk - kmin - 1)};
        FreeComplex<F> c = eagon_northcott(phi, m);
        out.twist = m;
        for (std::size_t p = 0; p < c.differentials.size(); ++p)
            out.matrices.push_back({"d" + std::to_string(p + 1), c.differentials[p]});
        if (method == ResultantMethod::gcd_minors) {
            auto g = gcd_of_maximal_minors(c.differentials[0], c.dims[0]);
            out.raw = g.gcd;
            out.condition = g.gcd;
            out.minors_used = g.minors;
            out.method = ResultantMethod::gcd_minors;
        } else {
            auto cd = resultant_of_complex(c);
            out.raw = cd.raw;
            out.condition = cd.normalized;
            out.method = ResultantMethod::complex_det;
        }
    }
    out.degrees = meta.per_column;
    out.total_degree = meta.total;
    return out;
}

/// Determinantal Dixon resultant of an n x (n+2) map over P^1 x P^1 with all
/// entries of bidegree (d1, d2): square matrices of size (n+2)(n+1) d1 d2 built
/// from the maximal minors at twists ((n+1)d1-1, (n+2)d2-1) and
/// ((n+2)d1-1, (n+1)d2-1).
template <Field F>
ResultantOutput<F> det_dixon(const GradedMap<F>& phi) {
    phi.validate();
    const SpacePtr& space = phi.space;
    detail::require_block_shape(*space, {1, 1}, "det-dixon");
    std::size_t n = phi.rows();
    if (n == 0 || phi.cols() != n + 2) throw UsageError("det-dixon needs an n x (n+2) matrix");
    std::optional<MultiDegree> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n + 2; ++j) {
            MultiDegree dij = phi.source_degrees[j] - phi.target_degrees[i];
            if (e && *e != dij) throw PreconditionError("bidegree", "det-dixon needs all entries of the same bidegree");
            e = dij;
        }
    int d1 = (*e)[0], d2 = (*e)[1];
    if (d1 < 1 || d2 < 1) throw PreconditionError("bidegree", "det-dixon needs bidegree at least (1,1)");
    int nn = static_cast<int>(n);
    std::vector<MultiPoly<F>> images = maximal_minors(phi);
    std::vector<MultiDegree> degs(images.size(), MultiDegree{nn * d1, nn * d2});
    MultiDegree first{(nn + 1) * d1 - 1, (nn + 2) * d2 - 1}, second{(nn + 2) * d1 - 1, (nn + 1) * d2 - 1};
    auto out = detail::square_output(matrix_of_map<F>(degs, images, first, space), first, "det-dixon " + first.to_string());
    PolyMatrix<F> alt = matrix_of_map<F>(degs, images, second, space);
    MultiPoly<F> alt_det = det(alt);
    if (!detail::same_value_up_to_scalar(alt_det, out.raw))
        throw InternalError("det-dixon determinants at the two twists disagree");
    out.cross_check = alt_det;
    out.matrices.push_back({"det-dixon " + second.to_string(), std::move(alt)});
    long per_column = static_cast<long>(nn + 1) * nn * d1 * d2;
    out.degrees.assign(n + 2, per_column);
    return out;
}

/// The six 2x2 minors f_i g_j - f_j g_i, i < j in lexicographic order.
template <Field F>
std::vector<MultiPoly<F>> pair_minors(const std::vector<MultiPoly<F>>& f, const std::vector<MultiPoly<F>>& g) {
    std::vector<MultiPoly<F>> out;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) out.push_back(f[i] * g[j] - f[j] * g[i]);
    return out;
}

/// Checks that the coordinate forms have no common factor.
template <Field F>
void require_no_base_points(const std::vector<MultiPoly<F>>& forms, const std::string& which) {
    MultiPoly<F> g;
    for (const auto& p : forms) g = gcd(g, p);
    if (g.is_zero()) throw PreconditionError("base points", which + " is identically zero");
    if (!g.parameters_only())
        throw PreconditionError("base points", which + " has the common factor " + to_string(g) + "; remove base points first");
}

/// The 2 x 4 graded map with rows f (bidegree (m,0)) and g (bidegree (0,n)).
template <Field F>
GradedMap<F> curves_map(const std::vector<MultiPoly<F>>& f, const std::vector<MultiPoly<F>>& g) {
    if (f.size() != 4 || g.size() != 4) throw UsageError("curves need four coordinate forms each");
    const SpacePtr& space = f[0].space();
    detail::require_block_shape(*space, {1, 1}, "curves");
    auto first_nonzero = [](const std::vector<MultiPoly<F>>& v, const std::string& name) {
        for (const auto& p : v)
            if (!p.is_zero()) return detail::require_degree(p, name);
        throw PreconditionError("base points", name + " is identically zero");
    };
    MultiDegree df = first_nonzero(f, "f"), dg = first_nonzero(g, "g");
    for (const auto& p : f)
        if (!p.is_zero() && detail::require_degree(p, "f") != df) throw PreconditionError("homogeneity", "forms of f differ in degree");
    for (const auto& p : g)
        if (!p.is_zero() && detail::require_degree(p, "g") != dg) throw PreconditionError("homogeneity", "forms of g differ in degree");
    if (df[1] != 0 || dg[0] != 0 || df[0] < 1 || dg[1] < 1)
        throw PreconditionError("bidegree", "f must live in the first block and g in the second");
    MultiDegree zero{0, 0};
    return GradedMap<F>(space, {f, g}, std::vector<MultiDegree>(4, zero), {MultiDegree{-df[0], 0}, MultiDegree{0, -dg[1]}});
}

/// Eagon-Northcott complex of the curves map at twist (p, q).
template <Field F>
FreeComplex<F> curves_complex(const std::vector<MultiPoly<F>>& f, const std::vector<MultiPoly<F>>& g, const MultiDegree& twist) {
    return eagon_northcott(curves_map(f, g), twist);
}

/// Two-curves determinantal resultant: gcd of maximal minors of the 9mn x 24mn
/// matrix of the six pair minors at twist (3m-1, 3n-1).
template <Field F>
ResultantOutput<F> curves_res(const std::vector<MultiPoly<F>>& f, const std::vector<MultiPoly<F>>& g,
                              const MinorOptions& opt = {}) {
    GradedMap<F> phi = curves_map(f, g);
    require_no_base_points(f, "first curve");
    require_no_base_points(g, "second curve");
    int m = -phi.target_degrees[0][0], n = -phi.target_degrees[1][1];
    MultiDegree twist{3 * m - 1, 3 * n - 1};
    std::vector<MultiPoly<F>> images = pair_minors(f, g);
    std::vector<MultiDegree> degs(images.size(), MultiDegree{m, n});
    PolyMatrix<F> mat = matrix_of_map<F>(degs, images, twist, phi.space);
    auto res = gcd_of_maximal_minors(mat, mat.rows(), opt);
    ResultantOutput<F> out;
    out.raw = res.gcd;
    out.condition = res.gcd;
    out.method = ResultantMethod::gcd_minors;
    out.twist = twist;
    out.minors_used = res.minors;
    out.matrices.push_back({"curves", std::move(mat)});
    return out;
}

}  // namespace elimres
