#pragma once

// JSON and CSV documents. Arbitrary-size integers are always JSON strings;
// valuations are small integers or the string "inf".

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jp_search.hpp"
#include "patterns.hpp"
#include "verify.hpp"
#include "wolstenholme.hpp"

namespace harmpadic {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "harmpadic 1.0.0";

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- field-level helpers -------------------------------------------------

inline Json valuation_json(const Valuation& v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

inline Valuation valuation_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return Valuation::infinity();
    if (j.is_number_integer()) return Valuation(j.get<long>());
    throw SchemaError("valuation must be an integer or \"inf\"");
}

inline Integer integer_from_json(const Json& j) {
    if (!j.is_string()) throw SchemaError("big integer fields must be decimal strings");
    try {
        return parse_integer(j.get<std::string>());
    } catch (const DomainError& e) {
        throw SchemaError(e.what());
    }
}

// ---- validation ----------------------------------------------------------

enum class FieldType { Integer, Bool, String, BigInt, Valuation, Array, Object, NullableInteger };

struct FieldSpec {
    const char* name;
    FieldType type;
};

/// Required top-level fields per document kind. The files under schemas/
/// describe the same documents for external consumers.
inline const std::map<std::string, std::vector<FieldSpec>>& document_fields() {
    static const std::map<std::string, std::vector<FieldSpec>> fields{
        {"valuation",
         {{"p", FieldType::Integer}, {"n", FieldType::BigInt}, {"valuation", FieldType::Valuation},
          {"exact", FieldType::Bool}, {"precision_used", FieldType::Integer}}},
        {"padic",
         {{"p", FieldType::Integer}, {"zero_to_precision", FieldType::Bool}, {"valuation", FieldType::Integer},
          {"unit", FieldType::BigInt}, {"precision", FieldType::Integer}, {"absolute_precision", FieldType::Integer}}},
        {"jp",
         {{"p", FieldType::Integer}, {"status", FieldType::String}, {"mode", FieldType::String},
          {"members", FieldType::Array}, {"member_details", FieldType::Array}, {"undetermined", FieldType::Array},
          {"stats", FieldType::Object}}},
        {"wolstenholme",
         {{"p", FieldType::Integer}, {"is_wolstenholme", FieldType::Bool}, {"h_p_minus_1_valuation", FieldType::Integer},
          {"valuation_exact", FieldType::Bool}, {"method", FieldType::String}}},
        {"wolstenholme_scan",
         {{"lo", FieldType::Integer}, {"hi", FieldType::Integer}, {"last_prime_done", FieldType::Integer},
          {"results", FieldType::Array}}},
        {"tower",
         {{"p", FieldType::Integer}, {"n", FieldType::BigInt}, {"wolstenholme_prime", FieldType::Bool},
          {"tower", FieldType::Array}, {"classification", FieldType::Object}, {"diagnostics", FieldType::String}}},
        {"table", {{"p", FieldType::Integer}, {"rows", FieldType::Array}}},
        {"verify", {{"suites", FieldType::Array}, {"ok", FieldType::Bool}}},
        {"bernoulli_table", {{"cap", FieldType::Integer}, {"entries", FieldType::Integer}}},
    };
    return fields;
}

inline bool field_matches(const Json& v, FieldType t) {
    switch (t) {
    case FieldType::Integer: return v.is_number_integer();
    case FieldType::NullableInteger: return v.is_null() || v.is_number_integer();
    case FieldType::Bool: return v.is_boolean();
    case FieldType::String: return v.is_string();
    case FieldType::BigInt: {
        if (!v.is_string()) return false;
        const auto& s = v.get_ref<const std::string&>();
        std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
        return s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos;
    }
    case FieldType::Valuation: return v.is_number_integer() || (v.is_string() && v.get<std::string>() == "inf");
    case FieldType::Array: return v.is_array();
    case FieldType::Object: return v.is_object();
    }
    return false;
}

/// Throws SchemaError unless `doc` is a well-formed document of a known kind.
inline void validate_document(const Json& doc) {
    if (!doc.is_object()) throw SchemaError("document must be a JSON object");
    if (!doc.contains("schema_version") || doc["schema_version"] != kSchemaVersion) {
        throw SchemaError("unsupported or missing schema_version");
    }
    if (!doc.contains("kind") || !doc["kind"].is_string()) throw SchemaError("missing kind");
    const std::string kind = doc["kind"];
    auto it = document_fields().find(kind);
    if (it == document_fields().end()) throw SchemaError("unknown document kind '" + kind + "'");
    for (const auto& f : it->second) {
        if (!doc.contains(f.name)) throw SchemaError(kind + ": missing field '" + f.name + "'");
        if (!field_matches(doc[f.name], f.type)) throw SchemaError(kind + ": field '" + f.name + "' has the wrong type");
    }
    if (kind == "jp") {
        for (const auto& m : doc["members"]) {
            if (!field_matches(m, FieldType::BigInt)) throw SchemaError("jp: members must be decimal strings");
        }
        if (doc["members"].size() != doc["member_details"].size()) throw SchemaError("jp: member lists differ in length");
    }
    if (kind == "table") {
        for (const auto& row : doc["rows"]) {
            if (!row.is_array()) throw SchemaError("table: rows must be arrays");
            for (const auto& cell : row) {
                if (!field_matches(cell, FieldType::Valuation)) throw SchemaError("table: bad cell");
            }
        }
    }
}

inline Json make_document(const std::string& kind) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

// ---- PadicApprox ---------------------------------------------------------

inline Json to_json(const PadicApprox& a) {
    Json j = make_document("padic");
    j["p"] = a.prime();
    j["zero_to_precision"] = a.is_zero_to_precision();
    j["valuation"] = a.valuation();
    j["unit"] = a.unit().get_str();
    j["precision"] = a.precision();
    j["absolute_precision"] = a.absolute_precision();
    return j;
}

inline PadicApprox padic_from_json(const Json& j) {
    validate_document(j);
    u64 p = j["p"];
    if (j["zero_to_precision"].get<bool>()) return PadicApprox::zero_to(p, j["absolute_precision"].get<long>());
    return PadicApprox::from_unit(p, j["valuation"].get<long>(), integer_from_json(j["unit"]), j["precision"].get<long>());
}

// ---- valuation -----------------------------------------------------------

inline Json valuation_document(const Integer& n, u64 p, const HarmonicValuation& hv,
                               const std::optional<PadicApprox>& approx = std::nullopt) {
    Json j = make_document("valuation");
    j["p"] = p;
    j["n"] = n.get_str();
    j["valuation"] = valuation_json(hv.valuation);
    j["exact"] = hv.exact;
    j["precision_used"] = hv.precision_used;
    if (approx) j["approx"] = to_json(*approx);
    return j;
}

// ---- J_p -----------------------------------------------------------------

inline Json to_json(const JpResult& r) {
    Json j = make_document("jp");
    j["p"] = r.prime;
    j["status"] = to_string(r.status);
    j["mode"] = "lift";
    j["level_cap"] = r.level_cap;
    j["members"] = Json::array();
    j["member_details"] = Json::array();
    for (const auto& m : r.members) {
        j["members"].push_back(m.n.get_str());
        j["member_details"].push_back({{"n", m.n.get_str()}, {"valuation", m.valuation}, {"exact", m.exact}});
    }
    j["undetermined"] = Json::array();
    for (const auto& u : r.undetermined) j["undetermined"].push_back(u.get_str());
    j["stats"] = {{"levels_explored", r.stats.levels_explored},
                  {"nodes_expanded", r.stats.nodes_expanded},
                  {"max_valuation_seen", r.stats.max_valuation_seen},
                  {"recomputations", r.stats.recomputations}};
    return j;
}

inline JpStatus jp_status_from_string(const std::string& s) {
    if (s == "Complete") return JpStatus::Complete;
    if (s == "Truncated") return JpStatus::Truncated;
    if (s == "Undetermined") return JpStatus::Undetermined;
    throw SchemaError("unknown J_p status '" + s + "'");
}

inline JpResult jp_from_json(const Json& j) {
    validate_document(j);
    if (j["kind"] != "jp" || j["mode"] != "lift") throw SchemaError("not a lift-mode J_p document");
    JpResult r;
    r.prime = j["p"];
    r.status = jp_status_from_string(j["status"]);
    r.level_cap = j.value("level_cap", 0L);
    for (const auto& m : j["member_details"]) {
        r.members.push_back({integer_from_json(m.at("n")), m.at("valuation").get<long>(), m.at("exact").get<bool>()});
    }
    for (const auto& u : j["undetermined"]) r.undetermined.push_back(integer_from_json(u));
    const auto& s = j["stats"];
    r.stats = {s.at("levels_explored"), s.at("nodes_expanded"), s.at("max_valuation_seen"), s.at("recomputations")};
    return r;
}

/// Scan-mode document for the exact brute-force search.
inline Json jp_scan_document(u64 p, u64 bound, const std::vector<u64>& members) {
    Json j = make_document("jp");
    j["p"] = p;
    j["status"] = "Complete";
    j["mode"] = "scan";
    j["bound"] = std::to_string(bound);
    j["members"] = Json::array();
    j["member_details"] = Json::array();
    for (u64 n : members) {
        j["members"].push_back(std::to_string(n));
        j["member_details"].push_back({{"n", std::to_string(n)}});
    }
    j["undetermined"] = Json::array();
    j["stats"] = {{"checked", bound}};
    return j;
}

// ---- Wolstenholme --------------------------------------------------------

inline Json to_json(const WolstenholmeResult& r) {
    Json j = make_document("wolstenholme");
    j["p"] = r.prime;
    j["is_wolstenholme"] = r.is_wolstenholme;
    j["h_p_minus_1_valuation"] = r.h_p_minus_1_valuation;
    j["valuation_exact"] = r.valuation_exact;
    j["method"] = to_string(r.method);
    return j;
}

inline WolstenholmeResult wolstenholme_from_json(const Json& j) {
    validate_document(j);
    WolstenholmeResult r;
    r.prime = j["p"];
    r.is_wolstenholme = j["is_wolstenholme"];
    r.h_p_minus_1_valuation = j["h_p_minus_1_valuation"];
    r.valuation_exact = j["valuation_exact"];
    const std::string m = j["method"];
    if (m == "harmonic") r.method = WolstenholmeMethod::Harmonic;
    else if (m == "bernoulli") r.method = WolstenholmeMethod::Bernoulli;
    else if (m == "both") r.method = WolstenholmeMethod::Both;
    else throw SchemaError("unknown method '" + m + "'");
    return r;
}

inline Json to_json(const ScanProgress& s) {
    Json j = make_document("wolstenholme_scan");
    j["lo"] = s.lo;
    j["hi"] = s.hi;
    j["last_prime_done"] = s.last_prime_done;
    j["results"] = Json::array();
    for (const auto& r : s.results) j["results"].push_back(to_json(r));
    return j;
}

inline ScanProgress scan_from_json(const Json& j) {
    validate_document(j);
    ScanProgress s;
    s.lo = j["lo"];
    s.hi = j["hi"];
    s.last_prime_done = j["last_prime_done"];
    for (const auto& r : j["results"]) s.results.push_back(wolstenholme_from_json(r));
    return s;
}

// ---- towers --------------------------------------------------------------

inline Json to_json(const PatternReport& r) {
    Json j = make_document("tower");
    j["p"] = r.prime;
    j["n"] = r.base_n.get_str();
    j["wolstenholme_prime"] = r.wolstenholme_prime;
    j["tower"] = Json::array();
    for (std::size_t m = 0; m < r.tower.size(); ++m) {
        const auto& hv = r.tower[m];
        j["tower"].push_back({{"m", m}, {"valuation", valuation_json(hv.valuation)}, {"exact", hv.exact}});
    }
    const auto& c = r.classification;
    j["classification"] = {{"case", to_string(c.kind)},
                           {"turning_index", c.turning_index ? Json(*c.turning_index) : Json(nullptr)},
                           {"prefix_only", c.prefix_only},
                           {"boundary_convention", c.boundary_convention}};
    j["diagnostics"] = r.diagnostics;
    return j;
}

// ---- tables --------------------------------------------------------------

inline std::string cell_text(const Valuation& v) { return v.is_infinite() ? "inf" : std::to_string(v.value()); }

/// Header "m,k=0,...,k=p-1", one row per m.
inline std::string to_csv(const ValuationTable& t) {
    std::ostringstream os;
    os << "m";
    for (u64 k = 0; k < t.prime; ++k) os << ",k=" << k;
    os << "\n";
    for (std::size_t m = 0; m < t.rows.size(); ++m) {
        os << m;
        for (const auto& v : t.rows[m]) os << "," << cell_text(v);
        os << "\n";
    }
    return os.str();
}

inline std::string to_text(const ValuationTable& t) {
    std::ostringstream os;
    const int w = 4;
    os << std::string(6, ' ');
    for (u64 k = 0; k < t.prime; ++k) {
        std::string h = std::to_string(k);
        os << std::string(w - std::min<int>(w, static_cast<int>(h.size())), ' ') << h;
    }
    os << "\n";
    for (std::size_t m = 0; m < t.rows.size(); ++m) {
        std::string label = std::to_string(m);
        os << std::string(6 - std::min<int>(6, static_cast<int>(label.size())), ' ') << label;
        for (const auto& v : t.rows[m]) {
            std::string c = cell_text(v);
            os << std::string(w - std::min<int>(w, static_cast<int>(c.size())), ' ') << c;
        }
        os << "\n";
    }
    return os.str();
}

inline Json to_json(const ValuationTable& t) {
    Json j = make_document("table");
    j["p"] = t.prime;
    j["rows"] = Json::array();
    for (const auto& row : t.rows) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(valuation_json(v));
        j["rows"].push_back(std::move(r));
    }
    return j;
}

inline ValuationTable table_from_json(const Json& j) {
    validate_document(j);
    ValuationTable t;
    t.prime = j["p"];
    for (const auto& row : j["rows"]) {
        std::vector<Valuation> r;
        for (const auto& c : row) r.push_back(valuation_from_json(c));
        t.rows.push_back(std::move(r));
    }
    return t;
}

// ---- verify --------------------------------------------------------------

inline Json verify_document(const std::vector<SuiteReport>& reports) {
    Json j = make_document("verify");
    j["suites"] = Json::array();
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && r.ok();
        j["suites"].push_back({{"name", r.name},
                               {"passed", r.passed},
                               {"failed", r.failed},
                               {"failures", r.failures},
                               {"seconds", r.seconds}});
    }
    j["ok"] = ok;
    return j;
}

} // namespace harmpadic
