#include "dext/json_io.hpp"

#include <algorithm>

#include "dext/errors.hpp"

namespace dext {

Json to_json(const Scalar& s) { return s.str(); }

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
        rows.push_back(std::move(r));
    }
    return rows;
}

Json to_json(const CochainComplex& x) {
    Json dims = Json::object();
    Json diffs = Json::object();
    for (int i : x.support()) {
        dims[std::to_string(i)] = x.dim(i);
        if (x.dim(i + 1) > 0 && !x.d(i).is_zero()) diffs[std::to_string(i)] = to_json(x.d(i));
    }
    return Json{{"dims", dims}, {"differentials", diffs}};
}

Scalar scalar_from_json(const Json& j) {
    if (j.is_number_integer()) return Scalar(j.get<long long>());
    if (j.is_string()) return Scalar::parse(j.get<std::string>());
    throw ParseError("scalar must be an integer or a \"a/b\" string");
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) throw ParseError("matrix has wrong number of rows");
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw ParseError("matrix row has wrong length");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = scalar_from_json(j[i][c]);
    }
    return m;
}

CochainComplex complex_from_json(const Json& j) {
    std::map<int, std::size_t> dims;
    for (const auto& [k, v] : j.at("dims").items()) dims[std::stoi(k)] = v.get<std::size_t>();
    auto dim = [&](int i) {
        auto it = dims.find(i);
        return it == dims.end() ? std::size_t{0} : it->second;
    };
    std::map<int, Matrix> diffs;
    if (j.contains("differentials"))
        for (const auto& [k, v] : j.at("differentials").items()) {
            int i = std::stoi(k);
            diffs[i] = matrix_from_json(v, dim(i + 1), dim(i));
        }
    return CochainComplex(dims, diffs);
}

Json sorted(const Json& j) {
    if (j.is_object()) {
        std::vector<std::string> keys;
        for (const auto& [k, v] : j.items()) keys.push_back(k);
        std::sort(keys.begin(), keys.end());
        Json out = Json::object();
        for (const auto& k : keys) out[k] = sorted(j.at(k));
        return out;
    }
    if (j.is_array()) {
        Json out = Json::array();
        for (const auto& v : j) out.push_back(sorted(v));
        return out;
    }
    return j;
}

}  // namespace dext
