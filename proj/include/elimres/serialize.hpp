#pragma once

// JSON views of matrices, complexes, resultants and detector results.

#include <json.hpp>

#include "elimres/intersect.hpp"

namespace elimres {

using Json = nlohmann::ordered_json;

template <Field F>
Json to_json(const PolyMatrix<F>& m) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        entries.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()},
                {"cols", m.cols()},
                {"row_monomials", m.row_labels()},
                {"col_monomials", m.col_labels()},
                {"entries", std::move(entries)}};
}

inline Json to_json(const MultiDegree& d) { return Json(d.d); }

template <Field F>
Json to_json(const FreeComplex<F>& c) {
    Json diffs = Json::array();
    for (std::size_t p = 0; p < c.differentials.size(); ++p) {
        Json m = to_json(c.differentials[p]);
        m["label"] = "d" + std::to_string(p + 1);
        diffs.push_back(std::move(m));
    }
    return Json{{"twist", to_json(c.twist)}, {"dims", c.dims}, {"differentials", std::move(diffs)}};
}

template <Field F>
Json to_json(const ResultantOutput<F>& r, bool with_matrices) {
    Json j{{"condition", to_string(r.condition)}, {"method", to_string(r.method)}, {"twist", to_json(r.twist)}};
    Json shapes = Json::array();
    for (const auto& m : r.matrices) shapes.push_back({m.matrix.rows(), m.matrix.cols()});
    j["matrix_shapes"] = std::move(shapes);
    if (!r.degrees.empty()) j["degrees"] = r.degrees;
    if (r.total_degree) j["total_degree"] = *r.total_degree;
    if (r.minors_used) j["minors_used"] = r.minors_used;
    if (with_matrices) {
        Json ms = Json::array();
        for (const auto& m : r.matrices) {
            Json mj = to_json(m.matrix);
            mj["label"] = m.label;
            ms.push_back(std::move(mj));
        }
        j["matrices"] = std::move(ms);
    }
    return j;
}

template <Field F>
Json to_json(const IntersectionCondition<F>& c, bool with_matrices) {
    Json shapes = Json::array();
    for (auto [r, k] : c.matrix_shapes()) shapes.push_back({r, k});
    Json j{{"condition", to_string(c.condition)},
           {"guarantee", to_string(c.guarantee)},
           {"detector", c.detector},
           {"method", c.method},
           {"matrix_shapes", std::move(shapes)}};
    if (c.always_intersecting()) j["always_intersecting"] = true;
    if (c.minors_used) j["minors_used"] = c.minors_used;
    if (with_matrices) {
        Json ms = Json::array();
        for (const auto& m : c.matrices) {
            Json mj = to_json(m.matrix);
            mj["label"] = m.label;
            ms.push_back(std::move(mj));
        }
        j["matrices"] = std::move(ms);
    }
    return j;
}

}  // namespace elimres
