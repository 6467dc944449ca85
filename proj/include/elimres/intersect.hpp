#pragma once

// Intersection conditions for two families of space curves in P^3, given
// parametrically (four binary forms) or implicitly (forms in X, Y, Z, T, or a
// Hilbert-Burch matrix).

#include <map>
#include <string>
#include <vector>

#include "elimres/resultants.hpp"

namespace elimres {

/// Four binary forms of a common degree m in one P^1 block (plus parameters).
template <Field F>
struct ParametricFamily {
    std::vector<MultiPoly<F>> forms;
};

/// Forms in one P^3 block (plus parameters) cutting out the curve.
template <Field F>
struct ImplicitFamily {
    std::vector<MultiPoly<F>> forms;
};

/// n x (n+1) matrix over one P^3 block whose maximal minors cut out the curve.
template <Field F>
struct HilbertBurchFamily {
    GradedMap<F> matrix;
};

enum class Guarantee { exact, divisor };

inline std::string to_string(Guarantee g) { return g == Guarantee::exact ? "exact" : "divisor"; }

template <Field F>
struct IntersectionCondition {
    MultiPoly<F> condition;  // normalized; zero means every pair intersects
    MultiPoly<F> raw;
    Guarantee guarantee = Guarantee::divisor;
    std::string detector;
    std::string method;
    MultiDegree twist;
    std::vector<LabeledMatrix<F>> matrices;
    std::size_t minors_used = 0;

    bool always_intersecting() const { return condition.is_zero(); }
    std::vector<std::pair<std::size_t, std::size_t>> matrix_shapes() const {
        std::vector<std::pair<std::size_t, std::size_t>> s;
        for (const auto& m : matrices) s.emplace_back(m.matrix.rows(), m.matrix.cols());
        return s;
    }
};

namespace detail {

/// Space with the given geometric blocks and the union of the parameter
/// variables of `sources` (in order of first appearance).
inline SpacePtr working_space(const std::vector<VariableBlock>& geometric, const std::vector<SpacePtr>& sources) {
    std::vector<VariableBlock> blocks = geometric;
    std::vector<std::string> params;
    for (const auto& sp : sources) {
        if (!sp) continue;
        for (const auto& name : sp->parameter_names())
            if (std::find(params.begin(), params.end(), name) == params.end()) params.push_back(name);
    }
    if (!params.empty()) blocks.push_back({"params", params, BlockKind::parameter});
    return make_space(std::move(blocks));
}

template <Field F>
SpacePtr space_of(const std::vector<MultiPoly<F>>& forms) {
    for (const auto& p : forms)
        if (p.space()) return p.space();
    throw UsageError("family has no variable space");
}

inline const VariableBlock& single_geometric_block(const VariableSpace& sp, std::size_t nvars, const std::string& what) {
    if (sp.num_geometric() != 1 || sp.block_size(sp.geometric_blocks()[0]) != nvars)
        throw UsageError(what + " must live in a single geometric block of " + std::to_string(nvars) + " variables");
    return sp.blocks()[sp.geometric_blocks()[0]];
}

template <Field F>
std::vector<MultiPoly<F>> moved(const std::vector<MultiPoly<F>>& v, const SpacePtr& target) {
    std::vector<MultiPoly<F>> out;
    for (const auto& p : v) out.push_back(change_space(p, target));
    return out;
}

template <Field F>
int parametric_degree(const ParametricFamily<F>& c, const std::string& which) {
    if (c.forms.size() != 4) throw UsageError(which + " needs exactly four coordinate forms");
    std::optional<int> d;
    for (const auto& p : c.forms) {
        if (p.is_zero()) continue;
        int e = geometric_multidegree(p)[0];
        if (d && *d != e) throw PreconditionError("homogeneity", which + ": coordinate forms differ in degree");
        d = e;
    }
    if (!d) throw PreconditionError("base points", which + " is identically zero");
    if (*d < 1) throw PreconditionError("degree", which + " must have degree at least 1");
    return *d;
}

template <Field F>
IntersectionCondition<F> from_resultant(ResultantOutput<F> r, std::string detector, Guarantee g) {
    IntersectionCondition<F> out;
    out.condition = r.condition;
    out.raw = r.raw;
    out.guarantee = g;
    out.detector = std::move(detector);
    out.method = to_string(r.method);
    out.twist = r.twist;
    out.matrices = std::move(r.matrices);
    out.minors_used = r.minors_used;
    return out;
}

}  // namespace detail

/// Divides the coordinate forms by their gcd.
template <Field F>
ParametricFamily<F> remove_base_points(const ParametricFamily<F>& c) {
    MultiPoly<F> g;
    for (const auto& p : c.forms) g = gcd(g, p);
    if (g.is_zero()) throw UsageError("all coordinate forms are zero");
    ParametricFamily<F> out;
    for (const auto& p : c.forms) out.forms.push_back(*divide_exact(p, g));
    return out;
}

/// Two implicitly given families: the map sum S(delta - d_i) -> S(delta) of all
/// forms, with delta the sum of the four largest degrees minus 3, drops rank
/// exactly when the curves meet.
template <Field F>
IntersectionCondition<F> detect_ii(const ImplicitFamily<F>& c, const ImplicitFamily<F>& d, const MinorOptions& opt = {}) {
    std::vector<MultiPoly<F>> forms = c.forms;
    forms.insert(forms.end(), d.forms.begin(), d.forms.end());
    if (forms.size() < 4) throw PreconditionError("form count", "implicit/implicit detection needs at least four forms");
    SpacePtr sc = detail::space_of(c.forms), sd = detail::space_of(d.forms);
    const auto& block = detail::single_geometric_block(*sc, 4, "implicit family");
    if (detail::single_geometric_block(*sd, 4, "implicit family").variables != block.variables)
        throw UsageError("implicit families must use the same P^3 coordinates");
    SpacePtr work = detail::working_space({block}, {sc, sd});
    forms = detail::moved(forms, work);
    std::vector<MultiDegree> degs;
    std::vector<int> sorted;
    for (const auto& p : forms) {
        if (p.is_zero()) throw PreconditionError("nonzero input", "implicit forms must be nonzero");
        degs.push_back(geometric_multidegree(p));
        if (degs.back()[0] < 1) throw PreconditionError("degree", "implicit forms must have degree at least 1");
        sorted.push_back(degs.back()[0]);
    }
    std::sort(sorted.rbegin(), sorted.rend());
    MultiDegree delta{sorted[0] + sorted[1] + sorted[2] + sorted[3] - 3};
    PolyMatrix<F> mat = matrix_of_map<F>(degs, forms, delta, work);
    IntersectionCondition<F> out;
    out.detector = "ii";
    out.twist = delta;
    if (forms.size() == 4 && mat.square()) {
        out.raw = det(mat);
        out.condition = normalize(out.raw);
        out.guarantee = Guarantee::exact;
        out.method = to_string(ResultantMethod::square_det);
    } else {
        auto g = gcd_of_maximal_minors(mat, mat.rows(), opt);
        out.raw = g.gcd;
        out.condition = g.gcd;
        out.guarantee = Guarantee::divisor;
        out.method = to_string(ResultantMethod::gcd_minors);
        out.minors_used = g.minors;
    }
    out.matrices.push_back({"ii", std::move(mat)});
    return out;
}

enum class PPMethod { automatic, minors, curves };

/// Two parametrized families of degrees m and n: the map of the six pair
/// minors into S(3m-3, 3n-3) drops rank exactly when the curves meet. When
/// m = 1 or n = 1 that graded piece has no sources and the detector uses the
/// two-curves resultant at (3m-1, 3n-1) instead.
template <Field F>
IntersectionCondition<F> detect_pp(const ParametricFamily<F>& c, const ParametricFamily<F>& d,
                                   PPMethod method = PPMethod::automatic, const MinorOptions& opt = {}) {
    int m = detail::parametric_degree(c, "first curve"), n = detail::parametric_degree(d, "second curve");
    SpacePtr sc = detail::space_of(c.forms), sd = detail::space_of(d.forms);
    const auto& bc = detail::single_geometric_block(*sc, 2, "parametric family");
    const auto& bd = detail::single_geometric_block(*sd, 2, "parametric family");
    for (const auto& v : bc.variables)
        if (std::find(bd.variables.begin(), bd.variables.end(), v) != bd.variables.end())
            throw UsageError("the two parametrizations need distinct variables");
    SpacePtr work = detail::working_space({bc, bd}, {sc, sd});
    auto f = detail::moved(c.forms, work), g = detail::moved(d.forms, work);
    require_no_base_points(f, "first curve");
    require_no_base_points(g, "second curve");

    bool use_curves = method == PPMethod::curves || (method == PPMethod::automatic && (m == 1 || n == 1));
    if (use_curves) return detail::from_resultant(curves_res(f, g, opt), "pp", Guarantee::divisor);
    if (m == 1 || n == 1) throw PreconditionError("degree", "the pair-minor map at (3m-3, 3n-3) has no sources when m = 1 or n = 1");

    MultiDegree twist{3 * m - 3, 3 * n - 3};
    std::vector<MultiPoly<F>> images = pair_minors(f, g);
    std::vector<MultiDegree> degs(images.size(), MultiDegree{m, n});
    PolyMatrix<F> mat = matrix_of_map<F>(degs, images, twist, work);
    auto res = gcd_of_maximal_minors(mat, mat.rows(), opt);
    IntersectionCondition<F> out;
    out.condition = res.gcd;
    out.raw = res.gcd;
    out.guarantee = Guarantee::divisor;
    out.detector = "pp";
    out.method = to_string(ResultantMethod::gcd_minors);
    out.twist = twist;
    out.minors_used = res.minors;
    out.matrices.push_back({"pp", std::move(mat)});
    return out;
}

namespace detail {

template <Field F>
std::map<std::string, MultiPoly<F>> coordinate_bindings(const VariableBlock& p3, const std::vector<MultiPoly<F>>& forms) {
    std::map<std::string, MultiPoly<F>> b;
    for (std::size_t i = 0; i < 4; ++i) b.emplace(p3.variables[i], forms[i]);
    return b;
}

template <Field F>
IntersectionCondition<F> always_intersecting(const SpacePtr& work, const std::string& method) {
    IntersectionCondition<F> out;
    out.condition = MultiPoly<F>(work);
    out.raw = out.condition;
    out.guarantee = Guarantee::exact;
    out.detector = "pi";
    out.method = method;
    return out;
}

}  // namespace detail

/// Parametrized family against a complete intersection of two surfaces:
/// Sylvester resultant of the substituted forms.
template <Field F>
IntersectionCondition<F> detect_pi(const ParametricFamily<F>& c, const ImplicitFamily<F>& d) {
    if (d.forms.size() != 2)
        throw UsageError("parametric/implicit detection needs exactly two implicit forms or a Hilbert-Burch matrix");
    detail::parametric_degree(c, "parametric curve");
    SpacePtr sc = detail::space_of(c.forms), sd = detail::space_of(d.forms);
    const auto& bc = detail::single_geometric_block(*sc, 2, "parametric family");
    const auto& p3 = detail::single_geometric_block(*sd, 4, "implicit family");
    SpacePtr work = detail::working_space({bc}, {sc, sd});
    auto f = detail::moved(c.forms, work);
    require_no_base_points(f, "parametric curve");
    auto bind = detail::coordinate_bindings(p3, f);
    MultiPoly<F> g0 = substitute(d.forms[0], bind, work), g1 = substitute(d.forms[1], bind, work);
    if (g0.is_zero() || g1.is_zero()) return detail::always_intersecting<F>(work, "square_det");
    return detail::from_resultant(sylvester(g0, g1), "pi", Guarantee::exact);
}

/// Parametrized family against a Hilbert-Burch presented curve: determinantal
/// Sylvester resultant of the substituted matrix (degrees scale by m).
template <Field F>
IntersectionCondition<F> detect_pi(const ParametricFamily<F>& c, const HilbertBurchFamily<F>& d,
                                   ResultantMethod method = ResultantMethod::complex_det) {
    int m = detail::parametric_degree(c, "parametric curve");
    SpacePtr sc = detail::space_of(c.forms), sd = d.matrix.space;
    const auto& bc = detail::single_geometric_block(*sc, 2, "parametric family");
    const auto& p3 = detail::single_geometric_block(*sd, 4, "Hilbert-Burch matrix");
    SpacePtr work = detail::working_space({bc}, {sc, sd});
    auto f = detail::moved(c.forms, work);
    require_no_base_points(f, "parametric curve");
    auto bind = detail::coordinate_bindings(p3, f);
    std::vector<std::vector<MultiPoly<F>>> entries;
    for (const auto& row : d.matrix.entries) {
        std::vector<MultiPoly<F>> r;
        for (const auto& e : row) r.push_back(substitute(e, bind, work));
        entries.push_back(std::move(r));
    }
    std::vector<MultiDegree> ds, ks;
    for (const auto& x : d.matrix.source_degrees) ds.push_back(MultiDegree{x[0] * m});
    for (const auto& x : d.matrix.target_degrees) ks.push_back(MultiDegree{x[0] * m});
    GradedMap<F> phi(work, std::move(entries), std::move(ds), std::move(ks));
    auto r = det_sylvester(phi, method);
    return detail::from_resultant(std::move(r), "pi", method == ResultantMethod::gcd_minors ? Guarantee::divisor : Guarantee::exact);
}

/// Value of a condition at a full assignment of its parameters.
template <Field F>
F evaluate_condition(const MultiPoly<F>& condition, const std::map<std::string, F>& values) {
    MultiPoly<F> v = evaluate(condition, values);
    if (!v.is_constant()) throw UsageError("unbound parameter in '" + to_string(v) + "'");
    return v.constant_value();
}

/// Every form with the given parameter values substituted.
template <Field F>
std::vector<MultiPoly<F>> specialize_forms(const std::vector<MultiPoly<F>>& forms, const std::map<std::string, F>& values) {
    std::vector<MultiPoly<F>> out;
    for (const auto& p : forms) {
        std::map<std::string, F> own;
        if (p.space())
            for (const auto& [k, v] : values)
                if (p.space()->index_of(k)) own.emplace(k, v);
        out.push_back(evaluate(p, own));
        for (std::size_t var = 0; p.space() && var < p.space()->size(); ++var)
            if (p.space()->is_parameter(var) && out.back().involves(var))
                throw UsageError("unbound parameter '" + p.space()->name(var) + "'");
    }
    return out;
}

template <Field F>
ParametricFamily<F> specialize(const ParametricFamily<F>& c, const std::map<std::string, F>& values) {
    return {specialize_forms(c.forms, values)};
}

template <Field F>
ImplicitFamily<F> specialize(const ImplicitFamily<F>& c, const std::map<std::string, F>& values) {
    return {specialize_forms(c.forms, values)};
}

template <Field F>
HilbertBurchFamily<F> specialize(const HilbertBurchFamily<F>& c, const std::map<std::string, F>& values) {
    std::vector<std::vector<MultiPoly<F>>> entries;
    for (const auto& row : c.matrix.entries) entries.push_back(specialize_forms(row, values));
    return {GradedMap<F>(c.matrix.space, std::move(entries), c.matrix.source_degrees, c.matrix.target_degrees)};
}

}  // namespace elimres
