#include "znfal/json_io.hpp"

#include <fstream>
#include <sstream>

namespace znfal {

std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4) out.push_back(hex[(h >> shift) & 0xf]);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    ZNFAL_REQUIRE(in.good(), "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    ZNFAL_REQUIRE(out.good(), "cannot open file for writing: " + path);
    out << bytes;
    ZNFAL_REQUIRE(out.good(), "write failed: " + path);
}

Int json_int(const Json& j, const std::string& field) {
    ZNFAL_REQUIRE(j.contains(field), "missing field \"" + field + "\"");
    const Json& v = j.at(field);
    if (v.is_number_integer()) return v.get<Int>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        try {
            std::size_t used = 0;
            Int out = std::stoll(s, &used);
            ZNFAL_REQUIRE(used == s.size(), "field \"" + field + "\" is not an integer: " + s);
            return out;
        } catch (const std::exception&) {
            throw input_error("field \"" + field + "\" is not an integer: " + s);
        }
    }
    throw input_error("field \"" + field + "\" must be an integer or decimal string");
}

Rat json_rat(const Json& j, const std::string& field) {
    ZNFAL_REQUIRE(j.contains(field), "missing field \"" + field + "\"");
    const Json& v = j.at(field);
    if (v.is_number_integer()) return make_rat(v.get<Int>(), 1);
    ZNFAL_REQUIRE(v.is_string(), "field \"" + field + "\" must be \"num/den\"");
    return rat_from_string(v.get<std::string>());
}

Json point_set_to_json(const PointSet& e) {
    Json j;
    j["version"] = "1";
    j["n"] = e.mod.n;
    j["d"] = e.dim;
    Json pts = Json::array();
    for (const Point& p : e.pts) {
        Json row = Json::array();
        for (Int c : p) row.push_back(c);
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    return j;
}

PointSet point_set_from_json(const Json& j) {
    ZNFAL_REQUIRE(j.is_object(), "point-set file: top level must be an object");
    if (j.contains("version")) {
        const Json& v = j.at("version");
        std::string ver = v.is_string() ? v.get<std::string>() : v.dump();
        ZNFAL_REQUIRE(ver == "1", "point-set file: unsupported version " + ver);
    }
    Int n = json_int(j, "n");
    Int d = json_int(j, "d");
    ZNFAL_REQUIRE(j.contains("points") && j.at("points").is_array(),
                  "point-set file: missing points array");
    std::vector<Point> pts;
    for (const Json& row : j.at("points")) {
        ZNFAL_REQUIRE(row.is_array(), "point-set file: each point must be an array");
        Point p;
        for (const Json& c : row) {
            if (c.is_number_integer())
                p.push_back(c.get<Int>());
            else if (c.is_string())
                p.push_back(json_int(Json{{"c", c}}, "c"));
            else
                throw input_error("point-set file: coordinates must be integers");
        }
        pts.push_back(std::move(p));
    }
    return PointSet::make(factorize(n), static_cast<int>(d), std::move(pts));
}

LoadedPointSet load_point_set(const std::string& path) {
    std::string bytes = read_file(path);
    Json j;
    try {
        j = Json::parse(bytes);
    } catch (const nlohmann::json::exception& ex) {
        throw input_error("JSON parse failure in " + path + ": " + ex.what());
    }
    return LoadedPointSet{point_set_from_json(j), content_digest(bytes)};
}

void save_point_set(const PointSet& e, const std::string& path) {
    write_file(path, point_set_to_json(e).dump() + "\n");
}

namespace {

Json point_to_json_strings(const Point& p) {
    Json row = Json::array();
    for (Int c : p) row.push_back(std::to_string(c));
    return row;
}

Point point_from_json(const Json& row) {
    ZNFAL_REQUIRE(row.is_array(), "expected an array of coordinates");
    Point p;
    for (std::size_t i = 0; i < row.size(); ++i) {
        Json holder;
        holder["c"] = row[i];
        p.push_back(json_int(holder, "c"));
    }
    return p;
}

} // namespace

Json affine_summary_to_json(const AffineSummary& s) {
    Json j;
    j["p"] = std::to_string(s.p);
    j["ambient_dim"] = std::to_string(s.ambient_dim);
    j["dim"] = std::to_string(s.dim);
    j["fraction"] = rat_to_string(s.fraction);
    j["offset"] = point_to_json_strings(s.offset);
    Json basis = Json::array();
    for (const Point& b : s.basis) basis.push_back(point_to_json_strings(b));
    j["basis"] = std::move(basis);
    j["truncated"] = s.truncated;
    j["completed_dims"] = std::to_string(s.completed_dims);
    return j;
}

AffineSummary affine_summary_from_json(const Json& j) {
    AffineSummary s;
    s.p = json_int(j, "p");
    s.ambient_dim = static_cast<int>(json_int(j, "ambient_dim"));
    s.dim = static_cast<int>(json_int(j, "dim"));
    s.fraction = json_rat(j, "fraction");
    s.offset = point_from_json(j.at("offset"));
    for (const Json& b : j.at("basis")) s.basis.push_back(point_from_json(b));
    s.truncated = j.at("truncated").get<bool>();
    s.completed_dims = static_cast<int>(json_int(j, "completed_dims"));
    return s;
}

Json certificate_to_json(const StructureCertificate& c) {
    Json j;
    j["version"] = "1";
    j["n"] = std::to_string(c.n);
    j["d"] = std::to_string(c.dim);
    j["K"] = std::to_string(c.K);
    j["m"] = std::to_string(c.m);
    j["v"] = point_to_json_strings(c.coset_rep);
    j["alpha"] = rat_to_string(c.alpha);
    if (c.isotropy_k)
        j["isotropy_k"] = std::to_string(*c.isotropy_k);
    else
        j["isotropy_k"] = nullptr;
    Json locals = Json::array();
    for (const auto& [q, summary] : c.local_summaries) {
        Json entry = affine_summary_to_json(summary);
        entry["q"] = std::to_string(q);
        locals.push_back(std::move(entry));
    }
    j["local_summaries"] = std::move(locals);
    return j;
}

StructureCertificate certificate_from_json(const Json& j) {
    StructureCertificate c;
    c.n = json_int(j, "n");
    c.dim = static_cast<int>(json_int(j, "d"));
    c.K = json_int(j, "K");
    c.m = json_int(j, "m");
    c.coset_rep = point_from_json(j.at("v"));
    c.alpha = json_rat(j, "alpha");
    if (j.contains("isotropy_k") && !j.at("isotropy_k").is_null())
        c.isotropy_k = json_int(j, "isotropy_k");
    for (const Json& entry : j.at("local_summaries"))
        c.local_summaries.emplace_back(json_int(entry, "q"), affine_summary_from_json(entry));
    return c;
}

} // namespace znfal
