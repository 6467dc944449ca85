#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace elimres;
using oracle::Fq;
using oracle::Q;
using oracle::Rng;

namespace {

bool equal_up_to_sign(const MultiPoly<Q>& a, const MultiPoly<Q>& b) { return a == b || a == -b; }

MultiPoly<Fq> random_mod_form(Rng& rng, const SpacePtr& sp, const std::vector<int>& degree, std::uint32_t q) {
    return oracle::random_form<Fq>(sp, degree, [&] { return MultiPoly<Fq>(sp, Fq(rng.integer(0, q - 1), q)); });
}

// b*x - a*y: vanishes at (a:b) in the block (x, y)
MultiPoly<Fq> vanishing_linear(const SpacePtr& sp, const std::string& x, const std::string& y, std::pair<std::uint64_t, std::uint64_t> pt,
                               std::uint32_t q) {
    return MultiPoly<Fq>::variable(sp, x) * Fq(static_cast<long>(pt.second), q) -
           MultiPoly<Fq>::variable(sp, y) * Fq(static_cast<long>(pt.first), q);
}

std::pair<std::uint64_t, std::uint64_t> random_point(Rng& rng, std::uint32_t q) {
    auto line = oracle::projective_line(q);
    return line[static_cast<std::size_t>(rng.integer(0, static_cast<long>(line.size()) - 1))];
}

bool vanishes(const MultiPoly<Fq>& c) { return c.is_zero(); }

}  // namespace

// ---- sylvester ----

TEST(Sylvester, LinearForms) {
    auto sp = make_space({{"s", "t"}}, {"a0", "a1", "b0", "b1"});
    auto r = sylvester(parse_poly<Q>("a0*s + a1*t", sp), parse_poly<Q>("b0*s + b1*t", sp));
    EXPECT_EQ(r.condition, parse_poly<Q>("a0*b1 - a1*b0", sp));
    EXPECT_TRUE(equal_up_to_sign(r.raw, r.condition));
    EXPECT_EQ(r.method, ResultantMethod::square_det);
    EXPECT_EQ(r.twist, MultiDegree{1});
}

TEST(Sylvester, CoprimeMonomials) {
    auto sp = make_space({{"s", "t"}}, {});
    auto r = sylvester(parse_poly<Q>("s^2", sp), parse_poly<Q>("t^2", sp));
    ASSERT_EQ(r.matrices.size(), 1u);
    EXPECT_EQ(r.matrices[0].matrix.rows(), 4u);
    EXPECT_EQ(r.matrices[0].matrix.cols(), 4u);
    EXPECT_TRUE(r.condition.is_one());
    EXPECT_TRUE(equal_up_to_sign(r.raw, r.condition));
}

TEST(Sylvester, SubstitutedWorkedExample) {
    oracle::WorkedExample ex;
    auto work = make_space({{"s", "t"}}, {"l", "m"});
    auto cubic = ex.cubic_parametric().forms;
    std::map<std::string, MultiPoly<Q>> b;
    const char* names[4] = {"X", "Y", "Z", "T"};
    for (int i = 0; i < 4; ++i) b[names[i]] = change_space(cubic[i], work);
    auto surfaces = ex.conic_implicit().forms;
    auto r = sylvester(substitute(surfaces[0], b, work), substitute(surfaces[1], b, work));
    EXPECT_EQ(r.matrices[0].matrix.rows(), 9u);
    EXPECT_EQ(r.condition, change_space(ex.condition(), work));
    EXPECT_EQ(r.degrees, (std::vector<long>{3, 6}));
}

TEST(Sylvester, Rejections) {
    auto sp = make_space({{"s", "t"}}, {});
    EXPECT_THROW(sylvester(parse_poly<Q>("s + t^2", sp), parse_poly<Q>("s", sp)), PreconditionError);
    EXPECT_THROW(sylvester(parse_poly<Q>("3", sp), parse_poly<Q>("s", sp)), PreconditionError);
    auto two = make_space({{"s", "t"}, {"u", "v"}}, {});
    EXPECT_THROW(sylvester(parse_poly<Q>("s*u", two), parse_poly<Q>("t*v", two)), UsageError);
}

TEST(Sylvester, ScalingExponents) {
    Rng rng(41);
    auto sp = make_space({{"s", "t"}}, {});
    for (int i = 0; i < 20; ++i) {
        int d0 = static_cast<int>(rng.integer(1, 4)), d1 = static_cast<int>(rng.integer(1, 4));
        auto f0 = oracle::random_rational_form(rng, sp, {d0}), f1 = oracle::random_rational_form(rng, sp, {d1});
        if (f0.is_zero() || f1.is_zero() || try_geometric_multidegree(f0) != MultiDegree{d0}) continue;
        auto base = sylvester(f0, f1).raw;
        if (base.is_zero()) continue;
        Q c = rng.scale_factor();
        EXPECT_EQ(sylvester(f0 * c, f1).raw, base * c.pow(d1));
        EXPECT_EQ(sylvester(f0, f1 * c).raw, base * c.pow(d0));
    }
}

TEST(Sylvester, TwistIndependence) {
    Rng rng(42);
    auto sp = make_space({{"s", "t"}}, {"l"});
    for (int i = 0; i < 20; ++i) {
        int d0 = static_cast<int>(rng.integer(1, 3)), d1 = static_cast<int>(rng.integer(1, 3));
        auto f0 = oracle::random_rational_form(rng, sp, {d0}) + parse_poly<Q>("l*s^" + std::to_string(d0), sp);
        auto f1 = oracle::random_rational_form(rng, sp, {d1}) + parse_poly<Q>("t^" + std::to_string(d1), sp);
        auto r = sylvester(f0, f1);
        if (r.raw.is_zero()) continue;
        auto c = determinant_of_complex(koszul<Q>(sp, {f0, f1}, MultiDegree{d0 + d1}));
        EXPECT_TRUE(equal_up_to_sign(c.raw, r.raw));
    }
}

// ---- dixon ----

TEST(Dixon, CommonZeroGivesZero) {
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {});
    auto r = dixon(parse_poly<Q>("s*u", sp), parse_poly<Q>("s*v", sp), parse_poly<Q>("t*u", sp));
    EXPECT_TRUE(r.condition.is_zero());
}

TEST(Dixon, BilinearShapesAndCrossCheck) {
    Rng rng(43);
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {"l"});
    std::vector<MultiPoly<Q>> f;
    for (int i = 0; i < 3; ++i) f.push_back(oracle::random_rational_form(rng, sp, {1, 1}));
    f[2] += parse_poly<Q>("l*t*u", sp);
    auto r = dixon(f[0], f[1], f[2]);
    ASSERT_EQ(r.matrices.size(), 2u);
    for (const auto& m : r.matrices) {
        EXPECT_EQ(m.matrix.rows(), 6u);
        EXPECT_EQ(m.matrix.cols(), 6u);
    }
    ASSERT_TRUE(r.cross_check.has_value());
    EXPECT_TRUE(equal_up_to_sign(*r.cross_check, r.raw));
    EXPECT_EQ(r.twist, (MultiDegree{1, 2}));
}

TEST(Dixon, HigherBidegreeSizes) {
    Rng rng(44);
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {});
    for (auto [d1, d2] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {2, 2}}) {
        std::vector<MultiPoly<Q>> f;
        for (int i = 0; i < 3; ++i) f.push_back(oracle::random_rational_form(rng, sp, {d1, d2}));
        auto r = dixon(f[0], f[1], f[2]);
        EXPECT_EQ(r.matrices[0].matrix.rows(), static_cast<std::size_t>(6 * d1 * d2));
        EXPECT_EQ(r.matrices[1].matrix.rows(), static_cast<std::size_t>(6 * d1 * d2));
    }
}

TEST(Dixon, DegreeInEachFormIsColumnBlockSize) {
    // generic f0 with symbolic coefficients: the condition has degree 2 in them,
    // the number of columns of the f0 block at twist (1, 2)
    Rng rng(45);
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {"a0", "a1", "a2", "a3"});
    auto f0 = parse_poly<Q>("a0*s*u + a1*s*v + a2*t*u + a3*t*v", sp);
    for (int i = 0; i < 5; ++i) {
        auto f1 = oracle::random_rational_form(rng, sp, {1, 1}), f2 = oracle::random_rational_form(rng, sp, {1, 1});
        auto r = dixon(f0, f1, f2);
        if (r.raw.is_zero()) continue;
        for (const auto& t : r.raw.terms()) EXPECT_EQ(t.mono.total_degree(), 2u);
        EXPECT_EQ(r.degrees, (std::vector<long>{2, 2, 2}));
        EXPECT_EQ(r.total_degree, 6);
    }
}

TEST(Dixon, FullyGenericTotalDegree) {
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {"a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3", "c0", "c1", "c2", "c3"});
    auto form = [&](const char* x) {
        std::string n(x);
        return parse_poly<Q>(n + "0*s*u + " + n + "1*s*v + " + n + "2*t*u + " + n + "3*t*v", sp);
    };
    auto r = dixon(form("a"), form("b"), form("c"));
    ASSERT_FALSE(r.raw.is_zero());
    for (const auto& t : r.raw.terms()) {
        EXPECT_EQ(t.mono.total_degree(), 6u);
        for (std::size_t block = 0; block < 3; ++block) {
            unsigned deg = 0;
            for (std::size_t v = 0; v < 4; ++v) deg += t.mono[4 + 4 * block + v];
            EXPECT_EQ(deg, 2u);
        }
    }
}

TEST(Dixon, ScalingExponent) {
    Rng rng(46);
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {});
    for (auto [d1, d2] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}}) {
        std::vector<MultiPoly<Q>> f;
        for (int i = 0; i < 3; ++i) f.push_back(oracle::random_rational_form(rng, sp, {d1, d2}));
        auto base = dixon(f[0], f[1], f[2]).raw;
        if (base.is_zero()) continue;
        Q c = rng.scale_factor();
        EXPECT_EQ(dixon(f[0] * c, f[1], f[2]).raw, base * c.pow(2 * d1 * d2));
    }
}

TEST(Dixon, Rejections) {
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {});
    EXPECT_THROW(dixon(parse_poly<Q>("s*u", sp), parse_poly<Q>("s*v", sp), parse_poly<Q>("t^2*u", sp)), PreconditionError);
    EXPECT_THROW(dixon(parse_poly<Q>("s^2", sp), parse_poly<Q>("s*t", sp), parse_poly<Q>("t^2", sp)), PreconditionError);
}

// ---- det_sylvester ----

TEST(DetSylvester, OneRowIsSylvester) {
    Rng rng(47);
    auto sp = make_space({{"s", "t"}}, {"l"});
    for (int i = 0; i < 10; ++i) {
        auto f0 = oracle::random_rational_form(rng, sp, {2}) + parse_poly<Q>("l*s*t", sp);
        auto f1 = oracle::random_rational_form(rng, sp, {3}) + parse_poly<Q>("s^3", sp);
        auto r = det_sylvester(graded_map_from_entries<Q>(sp, {{f0, f1}}, {MultiDegree{0}}));
        auto s = sylvester(f0, f1);
        EXPECT_TRUE(equal_up_to_sign(r.raw, s.raw));
        EXPECT_EQ(r.condition, s.condition);
    }
}

TEST(DetSylvester, QuadraticTwoByThree) {
    Rng rng(48);
    auto sp = make_space({{"s", "t"}}, {});
    std::vector<std::vector<MultiPoly<Q>>> e(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) e[i].push_back(oracle::random_rational_form(rng, sp, {2}) + parse_poly<Q>(i == j ? "s^2" : "t^2", sp));
    auto r = det_sylvester(graded_map_from_entries<Q>(sp, e, {MultiDegree{0}, MultiDegree{0}}));
    ASSERT_EQ(r.matrices.size(), 1u);
    EXPECT_EQ(r.matrices[0].matrix.rows(), 6u);
    EXPECT_EQ(r.matrices[0].matrix.cols(), 6u);
    EXPECT_EQ(r.method, ResultantMethod::square_det);
    EXPECT_EQ(r.twist, MultiDegree{5});
    EXPECT_EQ(r.degrees, (std::vector<long>{4, 4, 4}));
    EXPECT_EQ(r.total_degree, 12);
}

TEST(DetSylvester, DegreeFormula) {
    auto m = det_sylvester_degrees({2, 2, 2}, {0, 0});
    EXPECT_EQ(m.per_column, (std::vector<long>{4, 4, 4}));
    EXPECT_EQ(m.total, 12);
    auto u = det_sylvester_degrees({3, 4, 3}, {0, 1});
    EXPECT_EQ(u.per_column, (std::vector<long>{6, 5, 6}));
    EXPECT_EQ(u.total, 2 * 10 - 3 * 1);
}

TEST(DetSylvester, ColumnScalingExponents) {
    Rng rng(49);
    auto sp = make_space({{"s", "t"}}, {});
    struct Shape {
        std::vector<int> d, k;
    };
    for (const auto& shape : {Shape{{1, 2, 2}, {0, 0}}, Shape{{2, 2, 3}, {0, 1}}}) {
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<std::vector<MultiPoly<Q>>> e(shape.k.size());
            for (std::size_t i = 0; i < shape.k.size(); ++i)
                for (int dj : shape.d) e[i].push_back(oracle::random_rational_form(rng, sp, {dj - shape.k[i]}));
            std::vector<MultiDegree> k;
            for (int x : shape.k) k.push_back(MultiDegree{x});
            auto base = det_sylvester(graded_map_from_entries<Q>(sp, e, k));
            if (base.raw.is_zero()) continue;
            auto meta = det_sylvester_degrees(shape.d, shape.k);
            Q c = rng.scale_factor();
            for (std::size_t j = 0; j < shape.d.size(); ++j) {
                auto scaled = e;
                for (auto& row : scaled) row[j] *= c;
                auto r = det_sylvester(graded_map_from_entries<Q>(sp, scaled, k));
                EXPECT_TRUE(equal_up_to_sign(r.raw, base.raw * c.pow(static_cast<unsigned long>(meta.per_column[j]))))
                    << "column " << j;
            }
        }
    }
}

TEST(DetSylvester, UnequalTwistsUseComplexAndMinorFallback) {
    Rng rng(50);
    auto sp = make_space({{"s", "t"}}, {"l"});
    std::vector<std::vector<MultiPoly<Q>>> e(2);
    for (int j = 0; j < 3; ++j) {
        e[0].push_back(oracle::random_rational_form(rng, sp, {2}) + parse_poly<Q>(j == 0 ? "l*s^2" : "t^2", sp));
        e[1].push_back(oracle::random_rational_form(rng, sp, {1}) + parse_poly<Q>(j == 1 ? "l*t" : "s", sp));
    }
    auto phi = graded_map_from_entries<Q>(sp, e, {MultiDegree{0}, MultiDegree{1}});
    auto r = det_sylvester(phi);
    EXPECT_EQ(r.method, ResultantMethod::complex_det);
    EXPECT_EQ(r.twist, MultiDegree{6 - 1 - 0 - 1});
    ASSERT_FALSE(r.condition.is_zero());
    auto g = det_sylvester(phi, ResultantMethod::gcd_minors);
    EXPECT_EQ(g.method, ResultantMethod::gcd_minors);
    EXPECT_TRUE(divides(r.condition, g.condition));
}

TEST(DetSylvester, Rejections) {
    auto sp = make_space({{"s", "t"}}, {});
    auto s = parse_poly<Q>("s", sp), one = parse_poly<Q>("1", sp);
    EXPECT_THROW(det_sylvester(graded_map_from_entries<Q>(sp, {{s, one}}, {MultiDegree{0}})), PreconditionError);
    EXPECT_THROW(det_sylvester(graded_map_from_entries<Q>(sp, {{s, s, s}}, {MultiDegree{0}})), UsageError);
}

// ---- det_dixon ----

TEST(DetDixon, OneRowIsDixon) {
    Rng rng(51);
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {"l"});
    for (int i = 0; i < 3; ++i) {
        std::vector<MultiPoly<Q>> f;
        for (int j = 0; j < 3; ++j) f.push_back(oracle::random_rational_form(rng, sp, {1, 1}));
        f[0] += parse_poly<Q>("l*s*v", sp);
        auto r = det_dixon(graded_map_from_entries<Q>(sp, {f}, {MultiDegree{0, 0}}));
        auto d = dixon(f[0], f[1], f[2]);
        EXPECT_TRUE(equal_up_to_sign(r.raw, d.raw));
    }
}

TEST(DetDixon, TwoRowsSize) {
    Rng rng(52);
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {});
    std::vector<std::vector<MultiPoly<Q>>> e(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j) e[i].push_back(oracle::random_rational_form(rng, sp, {1, 1}));
    auto r = det_dixon(graded_map_from_entries<Q>(sp, e, {MultiDegree{0, 0}, MultiDegree{0, 0}}));
    ASSERT_EQ(r.matrices.size(), 2u);
    for (const auto& m : r.matrices) {
        EXPECT_EQ(m.matrix.rows(), 12u);
        EXPECT_EQ(m.matrix.cols(), 12u);
    }
    EXPECT_EQ(r.degrees, (std::vector<long>(4, 6)));
}

TEST(DetDixon, ColumnScalingExponent) {
    Rng rng(53);
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {});
    for (int n = 1; n <= 2; ++n) {
        std::vector<std::vector<MultiPoly<Q>>> e(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n + 2; ++j) e[i].push_back(oracle::random_rational_form(rng, sp, {1, 1}));
        std::vector<MultiDegree> k(n, MultiDegree{0, 0});
        auto base = det_dixon(graded_map_from_entries<Q>(sp, e, k)).raw;
        ASSERT_FALSE(base.is_zero());
        Q c = rng.scale_factor();
        auto scaled = e;
        for (auto& row : scaled) row[1] *= c;
        EXPECT_EQ(det_dixon(graded_map_from_entries<Q>(sp, scaled, k)).raw,
                  base * c.pow(static_cast<unsigned long>((n + 1) * n)));
    }
}

TEST(DetDixon, Rejections) {
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {});
    auto a = parse_poly<Q>("s*u", sp), b = parse_poly<Q>("s^2*u", sp);
    EXPECT_THROW(det_dixon(graded_map_from_entries<Q>(sp, {{a, a, b}}, {MultiDegree{0, 0}})), PreconditionError);
    EXPECT_THROW(det_dixon(graded_map_from_entries<Q>(sp, {{a, a}}, {MultiDegree{0, 0}})), UsageError);
}

// ---- curves_res ----

TEST(CurvesRes, CubicAndConicShape) {
    Rng rng(54);
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {});
    std::vector<MultiPoly<Q>> f, g;
    for (int i = 0; i < 4; ++i) {
        f.push_back(oracle::random_rational_form(rng, sp, {3, 0}));
        g.push_back(oracle::random_rational_form(rng, sp, {0, 2}));
    }
    auto r = curves_res(f, g);
    ASSERT_EQ(r.matrices.size(), 1u);
    EXPECT_EQ(r.matrices[0].matrix.rows(), 54u);
    EXPECT_EQ(r.matrices[0].matrix.cols(), 144u);
    EXPECT_EQ(r.twist, (MultiDegree{8, 5}));
    EXPECT_EQ(r.method, ResultantMethod::gcd_minors);
    EXPECT_TRUE(r.degrees.empty());
    EXPECT_FALSE(r.total_degree.has_value());
    EXPECT_TRUE(r.condition.is_one());
}

TEST(CurvesRes, LinesDivisibleByIncidenceDeterminant) {
    Rng rng(55);
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {"l"});
    auto lp = parse_poly<Q>("l", sp);
    for (int trial = 0; trial < 5; ++trial) {
        // f = A s + B t, g = C u + D v with A depending on l
        std::vector<std::vector<MultiPoly<Q>>> pts(4, std::vector<MultiPoly<Q>>(4, MultiPoly<Q>(sp)));
        for (auto& p : pts)
            for (auto& x : p) x = MultiPoly<Q>(sp, rng.rational());
        pts[0][0] += lp;
        pts[3][2] += lp;
        std::vector<MultiPoly<Q>> f, g;
        auto s = parse_poly<Q>("s", sp), t = parse_poly<Q>("t", sp), u = parse_poly<Q>("u", sp), v = parse_poly<Q>("v", sp);
        for (int i = 0; i < 4; ++i) {
            f.push_back(pts[0][i] * s + pts[1][i] * t);
            g.push_back(pts[2][i] * u + pts[3][i] * v);
        }
        auto r = curves_res(f, g);
        EXPECT_EQ(r.matrices[0].matrix.rows(), 9u);
        EXPECT_EQ(r.matrices[0].matrix.cols(), 24u);
        PolyMatrix<Q> incidence(sp, 4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) incidence(i, j) = pts[j][i];
        auto det4 = det(incidence);
        ASSERT_FALSE(det4.is_zero());
        EXPECT_TRUE(divides(normalize(det4), r.condition)) << to_string(r.condition) << " / " << to_string(det4);
    }
}

TEST(CurvesRes, PlantedCommonPointVanishes) {
    Rng rng(56);
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {});
    for (int trial = 0; trial < 10; ++trial) {
        // f(1:1) = g(1:1) = (1,1,1,1)
        std::vector<MultiPoly<Q>> f, g;
        for (int i = 0; i < 4; ++i) {
            Q a = rng.rational(), c = rng.rational();
            f.push_back(parse_poly<Q>("s", sp) * a + parse_poly<Q>("t", sp) * (Q(1) - a));
            g.push_back(parse_poly<Q>("u", sp) * c + parse_poly<Q>("v", sp) * (Q(1) - c));
        }
        try {
            EXPECT_TRUE(curves_res(f, g).condition.is_zero());
        } catch (const PreconditionError& e) {
            EXPECT_EQ(e.condition(), "base points");
        }
    }
}

TEST(CurvesRes, BasePointsRejected) {
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {});
    std::vector<MultiPoly<Q>> f{parse_poly<Q>("s^2", sp), parse_poly<Q>("s*t", sp), parse_poly<Q>("s^2+s*t", sp), parse_poly<Q>("2*s*t", sp)};
    std::vector<MultiPoly<Q>> g{parse_poly<Q>("u", sp), parse_poly<Q>("v", sp), parse_poly<Q>("u+v", sp), parse_poly<Q>("u-v", sp)};
    try {
        curves_res(f, g);
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_EQ(e.condition(), "base points");
    }
}

// ---- soundness over prime fields ----

class Soundness : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(Soundness, Sylvester) {
    std::uint32_t q = GetParam();
    Rng rng(60 + q);
    auto sp = make_space({{"s", "t"}}, {});
    int found = 0;
    for (int i = 0; i < 100; ++i) {
        int d0 = static_cast<int>(rng.integer(1, 3)), d1 = static_cast<int>(rng.integer(1, 3));
        auto f0 = random_mod_form(rng, sp, {d0}, q), f1 = random_mod_form(rng, sp, {d1}, q);
        if (i % 2) {
            auto pt = random_point(rng, q);
            auto lin = vanishing_linear(sp, "s", "t", pt, q);
            f0 = lin * random_mod_form(rng, sp, {d0 - 1}, q) + MultiPoly<Fq>(sp);
            f1 = lin * random_mod_form(rng, sp, {d1 - 1}, q);
        }
        if (f0.is_zero() || f1.is_zero() || !try_geometric_multidegree(f0) || !try_geometric_multidegree(f1)) continue;
        if (oracle::common_zero_p1({f0, f1}, 0, 1, q)) {
            ++found;
            EXPECT_TRUE(vanishes(sylvester(f0, f1).condition));
        }
    }
    EXPECT_GE(found, 40);
}

TEST_P(Soundness, Dixon) {
    std::uint32_t q = GetParam();
    Rng rng(70 + q);
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {});
    int found = 0;
    for (int i = 0; i < 40; ++i) {
        std::vector<MultiPoly<Fq>> f;
        auto p1 = random_point(rng, q), p2 = random_point(rng, q);
        auto a = vanishing_linear(sp, "s", "t", p1, q), b = vanishing_linear(sp, "u", "v", p2, q);
        for (int k = 0; k < 3; ++k) {
            if (i % 2)
                f.push_back(a * random_mod_form(rng, sp, {0, 1}, q) + b * random_mod_form(rng, sp, {1, 0}, q));
            else
                f.push_back(random_mod_form(rng, sp, {1, 1}, q));
        }
        bool degenerate = false;
        for (const auto& p : f) degenerate |= p.is_zero();
        if (degenerate) continue;
        if (oracle::common_zero_p1p1(f, q)) {
            ++found;
            EXPECT_TRUE(vanishes(dixon(f[0], f[1], f[2]).condition));
        }
    }
    EXPECT_GE(found, 15);
}

TEST_P(Soundness, DeterminantalSylvester) {
    std::uint32_t q = GetParam();
    Rng rng(80 + q);
    auto sp = make_space({{"s", "t"}}, {});
    int found = 0;
    for (int i = 0; i < 60; ++i) {
        std::vector<std::vector<MultiPoly<Fq>>> e(2);
        for (int j = 0; j < 3; ++j) e[0].push_back(random_mod_form(rng, sp, {1}, q));
        if (i % 2) {
            // second row = c * first row + (linear vanishing at pt) * constants
            auto lin = vanishing_linear(sp, "s", "t", random_point(rng, q), q);
            Fq c(rng.integer(0, q - 1), q);
            for (int j = 0; j < 3; ++j) e[1].push_back(e[0][j] * c + lin * Fq(rng.integer(0, q - 1), q));
        } else {
            for (int j = 0; j < 3; ++j) e[1].push_back(random_mod_form(rng, sp, {1}, q));
        }
        bool degenerate = false;
        for (const auto& row : e)
            for (const auto& p : row) degenerate |= p.is_zero();
        if (degenerate) continue;
        auto phi = graded_map_from_entries<Fq>(sp, e, {MultiDegree{0}, MultiDegree{0}});
        if (oracle::common_zero_p1(maximal_minors(phi), 0, 1, q)) {
            ++found;
            EXPECT_TRUE(vanishes(det_sylvester(phi).condition));
        }
    }
    EXPECT_GE(found, 20);
}

TEST_P(Soundness, CurvesRes) {
    std::uint32_t q = GetParam();
    Rng rng(90 + q);
    auto sp = make_space({{"s", "t"}, {"u", "v"}}, {});
    auto s = MultiPoly<Fq>::variable(sp, "s"), t = MultiPoly<Fq>::variable(sp, "t");
    auto u = MultiPoly<Fq>::variable(sp, "u"), v = MultiPoly<Fq>::variable(sp, "v");
    int found = 0;
    for (int i = 0; i < 40; ++i) {
        int m = static_cast<int>(rng.integer(1, 2)), n = 1;
        std::vector<MultiPoly<Fq>> f, g;
        for (int k = 0; k < 4; ++k) {
            f.push_back(random_mod_form(rng, sp, {m, 0}, q));
            g.push_back(random_mod_form(rng, sp, {0, n}, q));
        }
        if (i % 2) {
            // f(1:0) = g(1:0) = P
            for (int k = 0; k < 4; ++k) {
                Fq p(rng.integer(0, q - 1), q);
                f[k] = s.pow(m) * p + t * random_mod_form(rng, sp, {m - 1, 0}, q);
                g[k] = u.pow(n) * p + v * random_mod_form(rng, sp, {0, n - 1}, q);
            }
        }
        try {
            bool meet = oracle::parametric_curves_meet(
                {f[0], f[1], f[2], f[3]}, {
                    substitute(g[0], {{"u", s}, {"v", t}}, sp), substitute(g[1], {{"u", s}, {"v", t}}, sp),
                    substitute(g[2], {{"u", s}, {"v", t}}, sp), substitute(g[3], {{"u", s}, {"v", t}}, sp)}, q);
            if (!meet) continue;
            auto r = curves_res(f, g);
            ++found;
            EXPECT_TRUE(vanishes(r.condition));
        } catch (const PreconditionError&) {
            // base points or a degenerate coordinate row: not an admissible instance
        }
    }
    EXPECT_GE(found, 15);
}

INSTANTIATE_TEST_SUITE_P(PrimeFields, Soundness, ::testing::Values(101u, 251u));
