#pragma once

#include <string>

#include <json.hpp>

#include "isokit/admissible.hpp"
#include "isokit/bounds.hpp"
#include "isokit/certifier.hpp"
#include "isokit/geom.hpp"
#include "isokit/john.hpp"
#include "isokit/lattice.hpp"
#include "isokit/mvee.hpp"

namespace isokit {

using Json = nlohmann::json;

/// {"vertices": [[x, y, z], ...]} with JSON numbers or "p/q" strings. In
/// rational mode a decimal literal such as 0.1 is read as 1/10; numbers in
/// exponent notation are taken as the exact value of the nearest double.
/// Throws ParseError for malformed documents; hull errors propagate.
Polytope parse_polytope(const Json& doc, NumberMode mode);
Polytope read_polytope_file(const std::string& path, NumberMode mode);

Json to_json(const Polytope& P);
Json to_json(const Ellipsoid& E);
Json to_json(const NormalizationResult& r);
Json to_json(const AdmissibleSet& A);
Json to_json(const LemmaGridReport& r);
Json to_json(const CertifySummary& s);
Json to_json(const WidthVolumeReport& r);

}  // namespace isokit
