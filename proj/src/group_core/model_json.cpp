#include "hlab/model_json.hpp"

namespace hlab {

using nlohmann::json;

json to_json(const Vec& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Vec vec_from_json(const json& j)
{
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json to_json(const Model& model)
{
    json omega = json::array();
    for (const Mat& W : model.omega()) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < W.rows(); ++i) rows.push_back(to_json(Vec(W.row(i).transpose())));
        omega.push_back(std::move(rows));
    }
    return {{"n", model.n()}, {"d", model.d()}, {"omega", std::move(omega)}, {"w_weights", to_json(model.w_weights())}};
}

Model model_from_json(const json& j)
{
    const int n = j.at("n").get<int>();
    const int d = j.at("d").get<int>();
    std::vector<Mat> omega;
    for (const json& comp : j.at("omega")) {
        Mat W(n, n);
        if (static_cast<int>(comp.size()) != n) throw DimensionError("omega component must have n rows");
        for (int i = 0; i < n; ++i) {
            const Vec row = vec_from_json(comp.at(static_cast<std::size_t>(i)));
            if (row.size() != n) throw DimensionError("omega rows must have n entries");
            W.row(i) = row.transpose();
        }
        omega.push_back(std::move(W));
    }
    Vec weights = j.contains("w_weights") ? vec_from_json(j.at("w_weights")) : Vec();
    return Model(n, d, std::move(omega), std::move(weights));
}

json to_json(const GroupElement& g) { return {{"w", to_json(g.w)}, {"c", to_json(g.c)}}; }

GroupElement group_element_from_json(const json& j) { return {vec_from_json(j.at("w")), vec_from_json(j.at("c"))}; }

} // namespace hlab
