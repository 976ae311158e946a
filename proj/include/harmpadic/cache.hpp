#pragma once

// On-disk result cache: cache_dir/{jp,wolstenholme,bernoulli}/<key>.json.
// Entries from another tool version, or whose payload no longer validates,
// are treated as absent.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>

#include "serialize.hpp"

namespace harmpadic {

enum class CacheKind { Jp, WolstenholmeScan, BernoulliTable };

inline std::string to_string(CacheKind k) {
    switch (k) {
    case CacheKind::Jp: return "jp";
    case CacheKind::WolstenholmeScan: return "wolstenholme_scan";
    case CacheKind::BernoulliTable: return "bernoulli_table";
    }
    return "?";
}

inline std::string cache_subdir(CacheKind k) {
    switch (k) {
    case CacheKind::Jp: return "jp";
    case CacheKind::WolstenholmeScan: return "wolstenholme";
    case CacheKind::BernoulliTable: return "bernoulli";
    }
    return "?";
}

struct CacheEntry {
    CacheKind kind = CacheKind::Jp;
    std::string key;
    Json payload;
    std::string tool_version = kToolVersion;
    std::string created_at;
};

inline std::string utc_timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Writes `contents` to `path` through a sibling temporary file and rename.
inline void atomic_write(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::create_directories(path.parent_path());
    std::random_device rd;
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(rd());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        os << contents;
        os.flush();
        if (!os) throw std::runtime_error("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot move cache entry into place: " + ec.message());
    }
}

class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }

    std::filesystem::path path_for(CacheKind kind, const std::string& key) const {
        return dir_ / cache_subdir(kind) / (key + ".json");
    }

    void store(const CacheEntry& e) const {
        Json j;
        j["kind"] = to_string(e.kind);
        j["key"] = e.key;
        j["tool_version"] = e.tool_version;
        j["created_at"] = e.created_at.empty() ? utc_timestamp() : e.created_at;
        j["payload"] = e.payload;
        atomic_write(path_for(e.kind, e.key), j.dump(2) + "\n");
    }

    void store(CacheKind kind, const std::string& key, const Json& payload) const {
        store(CacheEntry{kind, key, payload, kToolVersion, utc_timestamp()});
    }

    /// The entry if it exists, matches this tool version and its payload validates.
    std::optional<CacheEntry> load(CacheKind kind, const std::string& key) const {
        std::ifstream is(path_for(kind, key));
        if (!is) return std::nullopt;
        try {
            Json j = Json::parse(is);
            if (j.at("tool_version") != kToolVersion || j.at("kind") != to_string(kind) || j.at("key") != key) {
                return std::nullopt;
            }
            validate_document(j.at("payload"));
            return CacheEntry{kind, key, j.at("payload"), j.at("tool_version"), j.at("created_at")};
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    /// Persists B_0..B_upto as "index numerator/denominator" lines next to an entry.
    void store_bernoulli(const BernoulliTable& table, std::size_t upto) const {
        std::ostringstream os;
        table.save(os, upto);
        atomic_write(dir_ / "bernoulli" / "table.txt", os.str());
        Json payload = make_document("bernoulli_table");
        payload["cap"] = table.cap();
        payload["entries"] = upto + 1;
        store(CacheKind::BernoulliTable, "table", payload);
    }

    /// Seeds `table` from the cache; returns the number of entries loaded.
    std::size_t load_bernoulli(BernoulliTable& table) const {
        auto entry = load(CacheKind::BernoulliTable, "table");
        if (!entry) return 0;
        std::ifstream is(dir_ / "bernoulli" / "table.txt");
        if (!is) return 0;
        try {
            std::size_t n = table.load(is);
            return n >= std::min(table.cap() + 1, entry->payload["entries"].get<std::size_t>()) ? n : 0;
        } catch (const std::exception&) {
            return 0;
        }
    }

private:
    std::filesystem::path dir_;
};

} // namespace harmpadic
