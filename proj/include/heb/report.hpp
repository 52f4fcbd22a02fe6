#pragma once

#include "heb/bounds.hpp"
#include "heb/newton.hpp"
#include "heb/nondegen.hpp"
#include "heb/verify.hpp"

#include <json.hpp>

#include <string>

namespace heb {

using Json = nlohmann::ordered_json;

Json to_json(const ExponentVector& e);
Json to_json(const FaceAtInfinity& face);
Json to_json(const NewtonPolytope& gamma);
Json to_json(const ConvenienceReport& c);
Json to_json(const PolySystem& system, const SystemNewtonData& newton);
Json to_json(const FaceVerdict& v);
Json to_json(const NondegVerdict& v);
Json to_json(const ExponentReport& rep);
Json to_json(const GoodnessProbe& probe);
Json to_json(const VerificationReport& rep);
Json to_json(const SlopeResult& s);
Json to_json(const QuadraticBound& q);

/// Six significant digits, the precision of every text report.
std::string fmt(double v);

}  // namespace heb
