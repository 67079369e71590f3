#pragma once

/// File formats. Point-set files carry small integers and use plain JSON
/// numbers:
///   {"version":"1","n":6,"d":2,"points":[[0,0],[2,0],[3,0],[0,2]]}
/// Reports and certificates render every integer as a decimal string and
/// every rational as "num/den", since energies exceed 2^53 and must
/// survive any JSON consumer bit-exactly. Parsers accept both forms.

#include <string>

// vendored single-header nlohmann/json
#include "json.hpp"

#include "znfal/classify.hpp"
#include "znfal/points.hpp"

namespace znfal {

using Json = nlohmann::ordered_json;

/// FNV-1a 64-bit digest of raw bytes, rendered as "fnv1a64:<hex>".
std::string content_digest(const std::string& bytes);

Int json_int(const Json& j, const std::string& field);
Rat json_rat(const Json& j, const std::string& field);

Json point_set_to_json(const PointSet& e);
PointSet point_set_from_json(const Json& j);

struct LoadedPointSet {
    PointSet set;
    std::string digest; // digest of the file bytes as read
};
LoadedPointSet load_point_set(const std::string& path);
void save_point_set(const PointSet& e, const std::string& path);

Json affine_summary_to_json(const AffineSummary& s);
AffineSummary affine_summary_from_json(const Json& j);

Json certificate_to_json(const StructureCertificate& c);
StructureCertificate certificate_from_json(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

} // namespace znfal
