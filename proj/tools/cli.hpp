#pragma once

// Command-line front end. `run` parses arguments, dispatches to the
// resultant and detector operations and writes text or JSON.
//
// Exit codes: 0 success, 1 usage or parse error, 2 failed mathematical
// precondition, 3 internal error.

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "elimres/elimres.hpp"

namespace elimres::cli {

struct Options {
    std::string vars;
    std::string params;
    bool json = false;
    std::string at;
    bool direct = false;
    bool dump_matrix = false;
    std::optional<std::size_t> minors;
    std::uint32_t field = 0;
    std::string method = "auto";
    std::string twist;
    std::size_t rows = 0;
    std::string d;
    std::string k;
    std::size_t split = 0;
    std::vector<std::string> polys;
};

namespace detail {

inline std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

inline std::vector<std::vector<std::string>> parse_blocks(const std::string& vars) {
    std::vector<std::vector<std::string>> blocks;
    for (const auto& part : split_list(vars, '|')) blocks.push_back(split_list(part, ','));
    if (blocks.empty()) throw UsageError("--vars must declare at least one block, e.g. --vars \"s,t | X,Y,Z,T\"");
    return blocks;
}

inline std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (const auto& x : split_list(s, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(x, &used));
            if (used != x.size()) throw std::invalid_argument(x);
        } catch (const std::exception&) {
            throw UsageError("expected an integer, got '" + x + "'");
        }
    }
    return out;
}

inline SpacePtr block_space(const std::vector<std::vector<std::string>>& geometric, const std::vector<std::string>& params) {
    return make_space(geometric, params);
}

template <Field F>
class Runner {
public:
    Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {
        blocks_ = parse_blocks(o.vars);
        params_ = split_list(o.params, ',');
    }

    SpacePtr space_for(const std::vector<std::size_t>& which) const {
        std::vector<std::vector<std::string>> g;
        for (auto i : which) g.push_back(blocks_.at(i));
        return block_space(g, params_);
    }

    void need_blocks(std::size_t n, const std::string& shape) const {
        if (blocks_.size() != n) throw UsageError("this command needs --vars with " + shape);
    }
    void need_polys(std::size_t n) const {
        if (o_.polys.size() != n)
            throw UsageError("expected " + std::to_string(n) + " polynomial arguments, got " + std::to_string(o_.polys.size()));
    }

    MultiPoly<F> poly(std::size_t i, const SpacePtr& sp) const { return parse_poly<F>(o_.polys.at(i), sp, o_.field); }

    std::vector<MultiPoly<F>> polys(std::size_t from, std::size_t count, const SpacePtr& sp) const {
        std::vector<MultiPoly<F>> v;
        for (std::size_t i = 0; i < count; ++i) v.push_back(poly(from + i, sp));
        return v;
    }

    F scalar(const std::string& text) const { return elimres::detail::parse_scalar<F>(text, o_.field); }

    std::map<std::string, F> assignment() const {
        std::map<std::string, F> values;
        for (const auto& item : split_list(o_.at, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw UsageError("--at expects name=value pairs, got '" + item + "'");
            std::string name = trim(item.substr(0, eq));
            if (std::find(params_.begin(), params_.end(), name) == params_.end())
                throw UsageError("--at binds '" + name + "', which is not a declared parameter");
            values[name] = scalar(trim(item.substr(eq + 1)));
        }
        for (const auto& p : params_)
            if (!values.count(p)) throw UsageError("--at leaves parameter '" + p + "' unbound");
        return values;
    }

    MinorOptions minor_options() const {
        MinorOptions opt;
        if (o_.minors) {
            if (*o_.minors == 0) throw UsageError("--minors must be positive");
            opt.exact_count = *o_.minors;
        }
        return opt;
    }

    void print_matrix(const std::string& label, const PolyMatrix<F>& m) const {
        out_ << "# " << label << " (" << m.rows() << "x" << m.cols() << ")\n";
        for (std::size_t i = 0; i < m.rows(); ++i) {
            out_ << (m.row_labels().empty() ? "" : m.row_labels()[i] + ": ") << "[";
            for (std::size_t j = 0; j < m.cols(); ++j) out_ << (j ? ", " : "") << to_string(m(i, j));
            out_ << "]\n";
        }
    }

    void emit(const ResultantOutput<F>& r) const {
        if (!o_.at.empty()) {
            F v = evaluate_condition(r.condition, assignment());
            if (o_.json) {
                Json j = to_json(r, o_.dump_matrix);
                j["value"] = v.to_string();
                out_ << j.dump(2) << "\n";
            } else {
                out_ << v.to_string() << "\n";
            }
            return;
        }
        if (o_.json) {
            out_ << to_json(r, o_.dump_matrix).dump(2) << "\n";
            return;
        }
        out_ << to_string(r.condition) << "\n";
        if (o_.dump_matrix)
            for (const auto& m : r.matrices) print_matrix(m.label, m.matrix);
    }

    void emit(const IntersectionCondition<F>& c, std::optional<bool> direct_verdict = std::nullopt) const {
        std::optional<std::string> verdict;
        if (direct_verdict) {
            verdict = *direct_verdict ? "intersecting" : "disjoint";
        } else if (!o_.at.empty()) {
            F v = evaluate_condition(c.condition, assignment());
            verdict = v.is_zero() ? "intersecting" : "disjoint";
        }
        if (o_.json) {
            Json j = to_json(c, o_.dump_matrix);
            if (verdict) j["verdict"] = *verdict;
            out_ << j.dump(2) << "\n";
            return;
        }
        if (verdict) {
            out_ << *verdict << "\n";
            return;
        }
        out_ << to_string(c.condition) << "\n";
        if (o_.dump_matrix)
            for (const auto& m : c.matrices) print_matrix(m.label, m.matrix);
    }

    // ---- res ----

    void sylvester_cmd() {
        need_blocks(1, "one block of two variables");
        auto sp = space_for({0});
        need_polys(2);
        auto f0 = poly(0, sp), f1 = poly(1, sp);
        if (!o_.twist.empty()) {
            auto m = parse_ints(o_.twist);
            if (m.size() != 1) throw UsageError("--twist takes one integer here");
            auto c = koszul<F>(sp, {f0, f1}, MultiDegree{m[0]});
            auto tpl = koszul_template(sp->projective_dims(), {geometric_multidegree(f0), geometric_multidegree(f1)});
            auto rep = check_twist(tpl, MultiDegree{m[0]});
            if (!rep.valid) throw PreconditionError("twist", "higher cohomology does not vanish at " + rep.twist.to_string());
            auto cd = resultant_of_complex(c);
            ResultantOutput<F> r;
            r.condition = cd.normalized;
            r.raw = cd.raw;
            r.method = ResultantMethod::complex_det;
            r.twist = MultiDegree{m[0]};
            for (std::size_t p = 0; p < c.differentials.size(); ++p)
                r.matrices.push_back({"d" + std::to_string(p + 1), c.differentials[p]});
            emit(r);
            return;
        }
        emit(sylvester(f0, f1));
    }

    void dixon_cmd() {
        need_blocks(2, "two blocks of two variables");
        auto sp = space_for({0, 1});
        need_polys(3);
        emit(dixon(poly(0, sp), poly(1, sp), poly(2, sp)));
    }

    GradedMap<F> graded_matrix(const SpacePtr& sp, std::size_t from, std::size_t ncols_extra) const {
        std::size_t n = o_.rows;
        if (n == 0) throw UsageError("--rows is required for matrix input");
        std::size_t ncols = n + ncols_extra;
        if (o_.polys.size() < from + n * ncols)
            throw UsageError("expected " + std::to_string(n * ncols) + " matrix entries in row-major order");
        std::vector<std::vector<MultiPoly<F>>> entries(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < ncols; ++j) entries[i].push_back(poly(from + i * ncols + j, sp));
        std::size_t r = sp->num_geometric();
        auto ks = o_.k.empty() ? std::vector<int>(n * r, 0) : parse_ints(o_.k);
        if (ks.size() != n * r) throw UsageError("--k needs " + std::to_string(n * r) + " integers");
        std::vector<MultiDegree> k;
        for (std::size_t i = 0; i < n; ++i) k.emplace_back(std::vector<int>(ks.begin() + i * r, ks.begin() + (i + 1) * r));
        if (o_.d.empty()) return graded_map_from_entries(sp, std::move(entries), std::move(k));
        auto ds = parse_ints(o_.d);
        if (ds.size() != ncols * r) throw UsageError("--d needs " + std::to_string(ncols * r) + " integers");
        std::vector<MultiDegree> d;
        for (std::size_t j = 0; j < ncols; ++j) d.emplace_back(std::vector<int>(ds.begin() + j * r, ds.begin() + (j + 1) * r));
        return GradedMap<F>(sp, std::move(entries), std::move(d), std::move(k));
    }

    ResultantMethod det_method() const {
        if (o_.method == "auto" || o_.method == "complex") return ResultantMethod::complex_det;
        if (o_.method == "minors") return ResultantMethod::gcd_minors;
        throw UsageError("--method must be auto, complex or minors here");
    }

    void det_sylvester_cmd() {
        need_blocks(1, "one block of two variables");
        auto sp = space_for({0});
        auto phi = graded_matrix(sp, 0, 1);
        need_polys(o_.rows * (o_.rows + 1));
        emit(det_sylvester(phi, det_method()));
    }

    void det_dixon_cmd() {
        need_blocks(2, "two blocks of two variables");
        auto sp = space_for({0, 1});
        auto phi = graded_matrix(sp, 0, 2);
        need_polys(o_.rows * (o_.rows + 2));
        emit(det_dixon(phi));
    }

    void curves_cmd() {
        need_blocks(2, "two blocks of two variables");
        auto sp = space_for({0, 1});
        need_polys(8);
        auto f = polys(0, 4, sp), g = polys(4, 4, sp);
        if (!o_.twist.empty()) {
            auto t = parse_ints(o_.twist);
            if (t.size() != 2) throw UsageError("--twist takes p,q here");
            auto c = curves_complex(f, g, MultiDegree{t[0], t[1]});
            auto cd = resultant_of_complex(c);
            ResultantOutput<F> r;
            r.condition = cd.normalized;
            r.raw = cd.raw;
            r.method = ResultantMethod::complex_det;
            r.twist = MultiDegree{t[0], t[1]};
            for (std::size_t p = 0; p < c.differentials.size(); ++p)
                r.matrices.push_back({"d" + std::to_string(p + 1), c.differentials[p]});
            emit(r);
            return;
        }
        emit(curves_res(f, g, minor_options()));
    }

    // ---- intersect ----

    void pi_cmd() {
        need_blocks(2, "a parameter block and the P^3 block, e.g. \"s,t | X,Y,Z,T\"");
        auto sc = space_for({0}), sd = space_for({1});
        if (blocks_[0].size() != 2 || blocks_[1].size() != 4) throw UsageError("pi needs blocks of sizes 2 and 4");
        if (o_.polys.size() < 4) throw UsageError("pi needs four coordinate forms first");
        ParametricFamily<F> c{polys(0, 4, sc)};
        if (o_.rows == 0) {
            need_polys(6);
            ImplicitFamily<F> d{polys(4, 2, sd)};
            if (direct_requested()) {
                auto v = assignment();
                auto r = detect_pi(specialize(c, v), specialize(d, v));
                emit(r, r.always_intersecting());
                return;
            }
            emit(detect_pi(c, d));
            return;
        }
        HilbertBurchFamily<F> d{graded_matrix(sd, 4, 1)};
        need_polys(4 + o_.rows * (o_.rows + 1));
        if (direct_requested()) {
            auto v = assignment();
            auto r = detect_pi(specialize(c, v), specialize(d, v), det_method());
            emit(r, r.always_intersecting());
            return;
        }
        emit(detect_pi(c, d, det_method()));
    }

    void pp_cmd() {
        need_blocks(2, "two blocks of two variables");
        need_polys(8);
        auto sc = space_for({0}), sd = space_for({1});
        ParametricFamily<F> c{polys(0, 4, sc)}, d{polys(4, 4, sd)};
        PPMethod m = PPMethod::automatic;
        if (o_.method == "minors")
            m = PPMethod::minors;
        else if (o_.method == "curves")
            m = PPMethod::curves;
        else if (o_.method != "auto")
            throw UsageError("--method must be auto, minors or curves here");
        if (direct_requested()) {
            auto v = assignment();
            auto r = detect_pp(specialize(c, v), specialize(d, v), m, minor_options());
            emit(r, r.always_intersecting());
            return;
        }
        emit(detect_pp(c, d, m, minor_options()));
    }

    void ii_cmd() {
        need_blocks(1, "the P^3 block");
        auto sp = space_for({0});
        if (o_.split == 0 || o_.split >= o_.polys.size())
            throw UsageError("--split N must say how many of the forms belong to the first curve");
        ImplicitFamily<F> c{polys(0, o_.split, sp)}, d{polys(o_.split, o_.polys.size() - o_.split, sp)};
        if (direct_requested()) {
            auto v = assignment();
            auto r = detect_ii(specialize(c, v), specialize(d, v), minor_options());
            emit(r, r.always_intersecting());
            return;
        }
        emit(detect_ii(c, d, minor_options()));
    }

    void eval_cmd() {
        auto sp = block_space(blocks_, params_);
        need_polys(1);
        auto p = poly(0, sp);
        if (!o_.at.empty()) {
            std::map<std::string, F> values;
            for (const auto& item : split_list(o_.at, ',')) {
                auto eq = item.find('=');
                if (eq == std::string::npos) throw UsageError("--at expects name=value pairs, got '" + item + "'");
                values[trim(item.substr(0, eq))] = scalar(trim(item.substr(eq + 1)));
            }
            p = evaluate(p, values);
        }
        if (o_.json)
            out_ << Json{{"value", to_string(p)}}.dump(2) << "\n";
        else
            out_ << to_string(p) << "\n";
    }

private:
    bool direct_requested() const {
        if (!o_.direct) return false;
        if (o_.at.empty()) throw UsageError("--direct needs --at");
        return true;
    }

    const Options& o_;
    std::ostream& out_;
    std::vector<std::vector<std::string>> blocks_;
    std::vector<std::string> params_;
};

template <Field F>
void dispatch(const std::string& command, const Options& o, std::ostream& out) {
    Runner<F> r(o, out);
    if (command == "sylvester") r.sylvester_cmd();
    else if (command == "dixon") r.dixon_cmd();
    else if (command == "det-sylvester") r.det_sylvester_cmd();
    else if (command == "det-dixon") r.det_dixon_cmd();
    else if (command == "curves") r.curves_cmd();
    else if (command == "pi") r.pi_cmd();
    else if (command == "pp") r.pp_cmd();
    else if (command == "ii") r.ii_cmd();
    else if (command == "eval") r.eval_cmd();
    else throw UsageError("unknown command '" + command + "'");
}

inline void add_common(CLI::App* app, Options& o) {
    app->add_option("--vars", o.vars, "Geometric variable blocks, separated by '|'")->required();
    app->add_option("--params", o.params, "Parameter variables, comma separated");
    app->add_flag("--json", o.json, "Emit JSON");
    app->add_option("--at", o.at, "Specialize parameters, e.g. l=0,m=1/2");
    app->add_option("--field", o.field, "Work over the prime field F_q instead of the rationals");
    app->add_option("polys", o.polys, "Polynomial arguments (put '--' before arguments starting with '-')");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact resultants and space-curve intersection conditions"};
    app.require_subcommand(1);
    Options o;
    std::string command;

    auto* res = app.add_subcommand("res", "Resultant matrices and their conditions");
    res->require_subcommand(1);
    auto* inter = app.add_subcommand("intersect", "Intersection conditions for two curve families");
    inter->require_subcommand(1);
    auto* ev = app.add_subcommand("eval", "Print a polynomial canonically, optionally specialized with --at");
    detail::add_common(ev, o);
    ev->callback([&] { command = "eval"; });

    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
        auto* sub = parent->add_subcommand(name, help);
        detail::add_common(sub, o);
        sub->add_flag("--dump-matrix", o.dump_matrix, "Include the matrices");
        sub->callback([&command, name] { command = name; });
        return sub;
    };
    auto* syl = leaf(res, "sylvester", "Sylvester resultant of two binary forms");
    syl->add_option("--twist", o.twist, "Use the Koszul complex at this twist");
    leaf(res, "dixon", "Dixon resultant of three forms on P^1 x P^1");
    for (auto* sub : {leaf(res, "det-sylvester", "Determinantal Sylvester resultant of an n x (n+1) matrix"),
                      leaf(res, "det-dixon", "Determinantal Dixon resultant of an n x (n+2) matrix")}) {
        sub->add_option("--rows", o.rows, "Number of matrix rows n; entries follow in row-major order")->required();
        sub->add_option("--d", o.d, "Column degrees (default: read off the entries)");
        sub->add_option("--k", o.k, "Row twists (default: 0)");
    }
    for (auto* sub : {res->get_subcommand("det-sylvester")})
        sub->add_option("--method", o.method, "auto | complex | minors");
    auto* cur = leaf(res, "curves", "Two-curves determinantal resultant");
    cur->add_option("--minors", o.minors, "Compute exactly N maximal minors");
    cur->add_option("--twist", o.twist, "Determinant of the Eagon-Northcott complex at p,q instead");

    auto* pi = leaf(inter, "pi", "Parametrized family against an implicit one");
    pi->add_option("--rows", o.rows, "Hilbert-Burch matrix rows (otherwise two implicit forms)");
    pi->add_option("--d", o.d, "Hilbert-Burch column degrees");
    pi->add_option("--k", o.k, "Hilbert-Burch row twists");
    pi->add_option("--method", o.method, "auto | complex | minors");
    auto* pp = leaf(inter, "pp", "Two parametrized families");
    pp->add_option("--method", o.method, "auto | minors | curves");
    auto* ii = leaf(inter, "ii", "Two implicitly given families");
    ii->add_option("--split", o.split, "Number of forms of the first family")->required();
    for (auto* sub : {pi, pp, ii}) sub->add_flag("--direct", o.direct, "With --at: substitute first, then test the scalar matrix");
    for (auto* sub : {pp, ii}) sub->add_option("--minors", o.minors, "Compute exactly N maximal minors");

    // Arguments after "--" are polynomials even when they start with '-'.
    auto dashes = std::find(args.begin(), args.end(), std::string("--"));
    std::vector<std::string> trailing(dashes == args.end() ? dashes : dashes + 1, args.end());
    try {
        std::vector<std::string> rev(std::make_reverse_iterator(dashes), args.rend());
        app.parse(rev);
        o.polys.insert(o.polys.end(), trailing.begin(), trailing.end());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (o.field != 0) {
            if (!ModInt::is_prime(o.field)) throw UsageError("--field needs a prime, got " + std::to_string(o.field));
            detail::dispatch<ModInt>(command, o, out);
        } else {
            detail::dispatch<Rational>(command, o, out);
        }
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace elimres::cli
