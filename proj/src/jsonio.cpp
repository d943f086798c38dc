#include "metarep/jsonio.hpp"

namespace metarep {

json cycnum_to_json(const CycNum& x) {
    json j;
    j["N"] = x.field_order();
    j["coeffs"] = x.coeff_strings();
    return j;
}

CycNum cycnum_from_json(const json& j) {
    return CycNum::from_coeff_strings(j.at("N").get<long>(),
                                      j.at("coeffs").get<std::vector<std::string>>());
}

json cycmat_to_json(const CycMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(cycnum_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CycMat cycmat_from_json(const json& j) {
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
    long field = rows && cols ? j.at(0).at(0).at("N").get<long>() : 1;
    CycMat m = cyc_zero(field, rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = cycnum_from_json(j.at(static_cast<size_t>(i)).at(static_cast<size_t>(k)));
    return m;
}

json laurent_to_json(const LaurentPoly& p) {
    json terms = json::array();
    for (const auto& [d, c] : p.coeffs()) terms.push_back({{"deg", d}, {"coeff", c.get_str()}});
    return terms;
}

json cycpoly_to_json(const CycPoly& p) {
    json terms = json::array();
    for (const auto& [d, c] : p.coeffs)
        terms.push_back({{"deg", d}, {"coeff", cycnum_to_json(c)}});
    return terms;
}

json representation_to_json(const Representation& rep) {
    if (rep.backend != RepBackend::ExactCyclotomic)
        throw std::invalid_argument("only exact representations are serialized");
    json j;
    j["dim"] = rep.dim;
    j["field"] = rep.field;
    j["rank"] = rep.rank_n;
    j["z_exponent"] = rep.z_exponent;
    if (rep.chi) {
        json ex = json::array();
        for (const auto& a : rep.chi->exponents()) ex.push_back(a.get_str());
        j["chi_exponents"] = std::move(ex);
        j["chi_order"] = rep.chi->order();
    }
    json gens = json::array();
    for (const auto& m : rep.exact) gens.push_back(cycmat_to_json(m));
    j["generators"] = std::move(gens);
    return j;
}

Representation representation_from_json(const json& j) {
    Representation rep;
    rep.dim = j.at("dim").get<int>();
    rep.field = j.at("field").get<long>();
    rep.rank_n = j.value("rank", 0L);
    rep.z_exponent = j.value("z_exponent", 0L);
    rep.backend = RepBackend::ExactCyclotomic;
    rep.provenance = RepKind::Manual;
    for (const auto& g : j.at("generators")) {
        rep.exact.push_back(cycmat_from_json(g));
        rep.exact_inv.push_back(cyc_inverse(rep.exact.back()));
    }
    return rep;
}

json finabt_to_json(const FinAbT& h) {
    json j;
    j["n"] = h.n;
    j["free_rank"] = h.free_rank;
    json inv = json::array();
    for (const auto& d : h.invariant_factors) inv.push_back(d.get_str());
    j["invariant_factors"] = std::move(inv);
    j["torsion_order"] = h.torsion_order().get_str();
    json t = json::array();
    for (Eigen::Index i = 0; i < h.t_matrix.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < h.t_matrix.cols(); ++k)
            row.push_back(h.t_matrix(i, k).get_str());
        t.push_back(std::move(row));
    }
    j["t_matrix"] = std::move(t);
    return j;
}

json cohomology_to_json(const CohomologyReport& r) {
    json j;
    j["d"] = r.d;
    j["h0"] = r.h0;
    j["z1"] = r.z1;
    j["b1_dim"] = r.b1_dim;
    j["h1"] = r.h1;
    j["rank_d0"] = r.rank_d0;
    j["rank_d1"] = r.rank_d1;
    return j;
}

json cover_betti_to_json(const CoverBettiReport& r) {
    json j;
    j["k"] = r.k.get_str();
    j["b1_tilde"] = r.b1_tilde;
    j["equality"] = r.equality;
    j["sigma_b1_lower_bound"] = r.sigma_lower_bound.get_str();
    return j;
}

} // namespace metarep
