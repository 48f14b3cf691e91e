#include "trophom/json_io.hpp"

#include "trophom/errors.hpp"

namespace trophom {

namespace {

nlohmann::json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

Int int_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw InvalidInput("expected an integer or decimal string");
}

}  // namespace

nlohmann::json homology_group_to_json(const HomologyGroup& group) {
    nlohmann::json j;
    j["rank"] = group.rank;
    j["torsion"] = nlohmann::json::array();
    for (const Int& d : group.invariant_factors) j["torsion"].push_back(int_to_json(d));
    return j;
}

HomologyGroup homology_group_from_json(const nlohmann::json& j) {
    HomologyGroup out;
    out.rank = j.at("rank").get<std::size_t>();
    for (const auto& d : j.at("torsion")) out.invariant_factors.push_back(int_from_json(d));
    for (std::size_t i = 0; i < out.invariant_factors.size(); ++i) {
        if (out.invariant_factors[i] < 2) throw InvalidInput("torsion factors must be >= 2");
        if (i > 0 && out.invariant_factors[i] % out.invariant_factors[i - 1] != 0)
            throw InvalidInput("torsion factors must form a divisibility chain");
    }
    return out;
}

nlohmann::json matrix_to_json(const SparseIntMatrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = nlohmann::json::array();
    for (const auto& [r, c, v] : m.triplets())
        j["entries"].push_back(nlohmann::json::array({r, c, int_to_json(v)}));
    return j;
}

SparseIntMatrix matrix_from_json(const nlohmann::json& j) {
    SparseIntMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    for (const auto& e : j.at("entries"))
        m.add(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), int_from_json(e.at(2)));
    return m;
}

nlohmann::json quotient_complex_to_json(const QuotientComplex& complex) {
    nlohmann::json j;
    j["p"] = complex.p;
    j["level"] = complex.level;
    j["group_order"] = complex.group.order();
    j["counts"] = complex.orbit_counts();
    j["boundaries"] = nlohmann::json::array();
    for (std::size_t k = 1; k < complex.boundaries.size(); ++k)
        j["boundaries"].push_back(matrix_to_json(complex.boundaries[k]));
    return j;
}

}  // namespace trophom
