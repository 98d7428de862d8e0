#pragma once

#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>

#include "icmod/serialize.hpp"

namespace icmod {

inline constexpr const char* kToolVersion = "icmod 0.1.0";
inline constexpr int kCacheSchemaVersion = 1;

inline std::string fnv1a64_hex(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

/// Disk cache of computed polynomials, keyed by (genus, kind, key).  Each
/// entry is one JSON file carrying a content hash over the payload; lookups
/// that fail schema, key or hash validation miss (the caller recomputes and
/// overwrites).  Writes go through a temp file and rename, so concurrent
/// writers are safe.
class Cache {
public:
    Cache() = default;

    explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw usage_error("cache: cannot create directory " + dir_.string());
    }

    /// Flag value beats the MODULI_CACHE_DIR environment variable; neither
    /// present disables caching.
    static Cache resolve(const std::string& flag_dir) {
        if (!flag_dir.empty()) return Cache(std::filesystem::path(flag_dir));
        if (const char* env = std::getenv("MODULI_CACHE_DIR"); env && *env)
            return Cache(std::filesystem::path(env));
        return Cache();
    }

    bool enabled() const { return !dir_.empty(); }

    std::optional<LaurentPoly> lookup(int genus, const std::string& kind, const std::string& key,
                                      Arity ar) const {
        if (!enabled()) return std::nullopt;
        std::ifstream in(entry_path(genus, kind, key));
        if (!in) return std::nullopt;
        json entry;
        try {
            in >> entry;
            if (entry.value("schema_version", -1) != kCacheSchemaVersion) return std::nullopt;
            if (entry.value("genus", -1) != genus) return std::nullopt;
            if (entry.value("kind", "") != kind) return std::nullopt;
            if (entry.value("key", "") != key) return std::nullopt;
            if (!entry.contains("poly") || !entry.contains("content_hash")) return std::nullopt;
            if (fnv1a64_hex(entry["poly"].dump()) != entry["content_hash"].get<std::string>())
                return std::nullopt;
            return poly_from_json(entry["poly"], ar);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    void store(int genus, const std::string& kind, const std::string& key,
               const LaurentPoly& p) const {
        if (!enabled()) return;
        const json poly = poly_to_json(p);
        const json entry{{"schema_version", kCacheSchemaVersion},
                         {"genus", genus},
                         {"key", key},
                         {"kind", kind},
                         {"poly", poly},
                         {"tool_version", kToolVersion},
                         {"content_hash", fnv1a64_hex(poly.dump())}};
        const auto path = entry_path(genus, kind, key);
        // per-process temp name, so concurrent writers never share a file
        const auto tmp = path.string() + ".tmp" + std::to_string(::getpid());
        {
            std::ofstream out(tmp);
            if (!out) throw usage_error("cache: cannot write " + tmp);
            out << entry.dump() << '\n';
        }
        std::filesystem::rename(tmp, path);
    }

    std::filesystem::path entry_path(int genus, const std::string& kind,
                                     const std::string& key) const {
        std::string name = "g" + std::to_string(genus) + "_" + kind + "_" + key + ".json";
        for (char& c : name)
            if (c == ',' || c == ' ' || c == '/') c = '-';
        return dir_ / name;
    }

private:
    std::filesystem::path dir_;
};

} // namespace icmod
