#include "seqspace/serialization.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>

namespace seqspace {

json to_json(const OrliczFunction& phi) {
    json pieces = json::array();
    for (const auto& p : phi.pieces())
        pieces.push_back(json{{"t0", p.t0}, {"b", p.b}, {"c", p.c}, {"q", p.q}});
    json j;
    j["pieces"] = pieces;
    if (std::isfinite(phi.domain_end())) j["domain_end"] = phi.domain_end();
    return j;
}

OrliczFunction orlicz_function_from_json(const json& j) {
    if (!j.contains("pieces") || !j["pieces"].is_array() || j["pieces"].empty())
        throw ParamOutOfRange("orlicz function: field 'pieces' must be a nonempty array");
    std::vector<Segment> segs;
    for (const auto& p : j["pieces"]) {
        Segment s;
        s.t0 = p.value("t0", 0.0);
        s.b = p.value("b", 0.0);
        s.c = p.value("c", 0.0);
        s.q = p.value("q", 2.0);
        segs.push_back(s);
    }
    const double dend =
        j.value("domain_end", std::numeric_limits<double>::infinity());
    return OrliczFunction(PiecewisePower(std::move(segs), dend));
}

json to_json(const SpaceSpec& s) {
    json j;
    j["schema"] = kSchema;
    if (const auto* l = std::get_if<LorentzSpec>(&s)) {
        j["kind"] = "lorentz";
        j["w"] = l->w;
        j["p"] = l->p;
        return j;
    }
    const auto& o = std::get<OrliczSpec>(s);
    j["kind"] = "orlicz";
    j["flavor"] = o.flavor == OrliczFlavor::Luxemburg ? "luxemburg" : "orlicz";
    j["dim"] = o.dim;
    j["phi"] = to_json(o.phi);
    return j;
}

SpaceSpec space_from_json(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "lorentz") {
        if (!j.contains("w") || !j["w"].is_array())
            throw ParamOutOfRange("space: field 'w' must be an array");
        return LorentzSpec(j["w"].get<std::vector<double>>(), j.value("p", 1.0));
    }
    if (kind == "orlicz") {
        const std::string fl = j.value("flavor", "luxemburg");
        if (fl != "luxemburg" && fl != "orlicz")
            throw ParamOutOfRange("space: field 'flavor' must be luxemburg|orlicz");
        if (!j.contains("phi")) throw ParamOutOfRange("space: field 'phi' missing");
        return OrliczSpec(orlicz_function_from_json(j["phi"]),
                          fl == "luxemburg" ? OrliczFlavor::Luxemburg : OrliczFlavor::OrliczNorm,
                          j.value("dim", std::size_t{0}));
    }
    throw ParamOutOfRange("space: field 'kind' must be lorentz|orlicz");
}

SpaceSpec space_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParamOutOfRange("space file not readable: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParamOutOfRange("space file " + path + ": " + e.what());
    }
    return space_from_json(j);
}

json to_json(const LinearOperator& T) {
    json rows = json::array();
    for (std::size_t i = 0; i < T.dim; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < T.dim; ++j) row.push_back(T.at(i, j));
        rows.push_back(row);
    }
    return json{{"dim", T.dim}, {"rows", rows}};
}

LinearOperator operator_from_json(const json& j) {
    const std::size_t d = j.value("dim", std::size_t{0});
    LinearOperator T(d);
    const auto& rows = j.at("rows");
    if (rows.size() != d) throw DimensionMismatch("operator: row count != dim");
    for (std::size_t i = 0; i < d; ++i) {
        if (rows[i].size() != d) throw DimensionMismatch("operator: column count != dim");
        for (std::size_t k = 0; k < d; ++k) T.at(i, k) = rows[i][k].get<double>();
    }
    return T;
}

json to_json(const ProjectionSpec& ps) {
    return json{{"fs", ps.fs}, {"us", ps.us}};
}

ProjectionSpec projection_from_json(const json& j) {
    ProjectionSpec ps;
    ps.fs = j.at("fs").get<std::vector<FunctionalVec>>();
    ps.us = j.at("us").get<std::vector<Vector>>();
    return ps;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Positive: return "Positive";
        case Verdict::Refuted: return "Refuted";
        default: return "Inconclusive";
    }
}

json to_json(const PositivityReport& r) {
    return json{{"inf_sup_value", r.inf_sup_value},
                {"witness_x", r.witness_x},
                {"witness_xstar", r.witness_xstar},
                {"verdict", verdict_name(r.verdict)},
                {"budget_used", r.budget_used}};
}

json to_json(const OpNormResult& r) {
    return json{{"value", r.value}, {"maximizer", r.maximizer}};
}

json to_json(const PropACheck& r) {
    return json{{"norm_p", r.norm_p},
                {"norm_id_minus_p", r.norm_id_minus_p},
                {"positivity_of_rank_sum", to_json(r.positivity_of_rank_sum)},
                {"consistent", r.consistent}};
}

json to_json(const MinProjResult& r) {
    return json{{"projection", to_json(r.best)}, {"norm_estimate", r.norm_estimate}};
}

json to_json(const LorentzHyperplaneResult& r) {
    return json{
        {"verdict", r.verdict == HyperplaneVerdict::PossiblyOne ? "PossiblyOne" : "Impossible"},
        {"reason", r.reason}};
}

json to_json(const PhiClassification& r) {
    json j;
    switch (r.kind) {
        case PhiClass::SimilarTo:
            j["kind"] = "SimilarTo";
            j["p"] = r.p;
            j["C"] = r.C;
            break;
        case PhiClass::EquivalentTo:
            j["kind"] = "EquivalentTo";
            j["p"] = r.p;
            break;
        default:
            j["kind"] = "NotEquivalentToAnyPower";
            break;
    }
    return j;
}

json to_json(const OrliczSubspaceResult& r) {
    const char* v = r.verdict == SubspaceVerdict::Compatible     ? "Compatible"
                    : r.verdict == SubspaceVerdict::Incompatible ? "Incompatible"
                                                                 : "NotApplicable";
    return json{{"verdict", v}, {"reason", r.reason}, {"gamma", r.gamma}};
}

std::string config_hash(const json& config) {
    const std::string dump = config.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace seqspace
