#include "heb/report.hpp"

#include <cmath>
#include <cstdio>

namespace heb {

namespace {

Json rationals(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& r : v) out.push_back(to_string(r));
    return out;
}

Json points(const std::vector<ExponentVector>& v) {
    Json out = Json::array();
    for (const auto& e : v) out.push_back(to_json(e));
    return out;
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json numbers(const std::vector<double>& v) {
    Json out = Json::array();
    for (double t : v) out.push_back(number(t));
    return out;
}

}  // namespace

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Json to_json(const ExponentVector& e) {
    Json out = Json::array();
    for (int k : e.entries()) out.push_back(k);
    return out;
}

Json to_json(const FaceAtInfinity& face) {
    Json out;
    out["id"] = face.id;
    out["dim"] = face.dim;
    out["support"] = points(face.support_points);
    out["vertices"] = points(face.vertices);
    out["normal"] = rationals(face.witness_normal);
    out["value"] = to_string(face.value);
    Json dec = Json::array();
    if (face.decomposition)
        for (const auto& part : *face.decomposition) dec.push_back(points(part));
    out["decomposition"] = dec;
    return out;
}

Json to_json(const NewtonPolytope& gamma) {
    Json out;
    out["dim"] = gamma.dim();
    out["vertices"] = points(gamma.vertices());
    Json facets = Json::array();
    for (const auto& f : gamma.facets()) facets.push_back({{"normal", rationals(f.normal)}, {"offset", to_string(f.offset)}});
    out["facets"] = facets;
    return out;
}

Json to_json(const ConvenienceReport& c) {
    return {{"convenient", c.convenient}, {"missing_axes", c.missing_axes}};
}

Json to_json(const PolySystem& system, const SystemNewtonData& newton) {
    Json out;
    out["variables"] = system.varnames();
    Json comps = Json::array();
    for (std::size_t i = 0; i < newton.components.size(); ++i) {
        Json c = to_json(newton.components[i]);
        c["name"] = system.names()[i];
        c["convenience"] = to_json(newton.convenience[i]);
        comps.push_back(c);
    }
    out["components"] = comps;
    out["convenient"] = newton.convenient();
    out["sum"] = to_json(newton.sum);
    Json faces = Json::array();
    for (const auto& f : newton.faces) faces.push_back(to_json(f));
    out["faces"] = faces;
    return out;
}

Json to_json(const FaceVerdict& v) {
    Json out;
    out["face"] = v.face_id;
    out["status"] = to_string(v.status);
    out["witness"] = v.witness ? numbers(*v.witness) : Json(nullptr);
    out["exact_witness"] = v.exact_witness ? rationals(*v.exact_witness) : Json(nullptr);
    out["objective_min"] = number(v.objective_min);
    out["level_minima"] = numbers(v.level_minima);
    out["samples"] = v.samples;
    out["seed"] = v.seed;
    return out;
}

Json to_json(const NondegVerdict& v) {
    Json out;
    out["overall"] = to_string(v.overall);
    out["convenient"] = v.convenient;
    Json conv = Json::array();
    for (const auto& c : v.convenience) conv.push_back(to_json(c));
    out["convenience"] = conv;
    Json faces = Json::array();
    for (const auto& f : v.faces) faces.push_back(to_json(f));
    out["faces"] = faces;
    return out;
}

Json to_json(const ExponentReport& rep) {
    Json out;
    out["d"] = rep.d;
    out["n"] = rep.n;
    out["p"] = rep.p;
    out["H"] = to_string(rep.H);
    out["alpha"] = to_string(rep.alpha);
    out["beta"] = to_string(rep.beta);
    out["notes"] = rep.notes;
    return out;
}

Json to_json(const GoodnessProbe& probe) {
    Json out;
    Json rings = Json::array();
    for (const auto& r : probe.rings)
        rings.push_back({{"R", r.radius},
                         {"slope_floor", r.floor ? number(*r.floor) : Json(nullptr)},
                         {"positive_samples", r.positive_samples}});
    out["rings"] = rings;
    out["trend"] = to_string(probe.trend);
    return out;
}

Json to_json(const VerificationReport& rep) {
    Json out;
    out["fitted_c"] = number(rep.fitted_c);
    out["alpha_used"] = to_string(rep.alpha_used);
    out["counted"] = rep.counted;
    out["violations"] = rep.violations;
    Json samples = Json::array();
    for (const auto& s : rep.samples)
        samples.push_back({{"x", numbers(s.x)},
                           {"residual", number(s.residual)},
                           {"distance", number(s.distance)},
                           {"slope", number(s.slope)},
                           {"ratio", number(s.ratio)}});
    out["samples"] = samples;
    Json probe = to_json(rep.rings);
    out["rings"] = probe["rings"];
    out["trend"] = probe["trend"];
    out["seed"] = rep.seed;
    return out;
}

Json to_json(const SlopeResult& s) {
    return {{"slope", number(s.value)}, {"lambda", numbers(s.lambda)}, {"active", s.active}};
}

Json to_json(const QuadraticBound& q) {
    auto vec = [](const Eigen::VectorXd& v) { return numbers(std::vector<double>(v.data(), v.data() + v.size())); };
    Json out;
    out["eigenvalues"] = vec(q.eigenvalues);
    out["lambda"] = number(q.lambda_min_nonzero);
    out["constant"] = number(q.constant);
    out["critical_point"] = vec(q.critical_point);
    out["critical_value"] = number(q.critical_value);
    return out;
}

}  // namespace heb
