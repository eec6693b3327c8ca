#include "gvarkit/manifest.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

#include "gvarkit/error.hpp"

namespace gvarkit {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string to_hex(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string digest_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::input_missing, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return to_hex(fnv1a64(buffer.str()));
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
    nlohmann::json j;
    j["tool_version"] = manifest.tool_version;
    j["command"] = manifest.command;
    j["config_hash"] = manifest.config_hash;
    j["input_digests"] = manifest.input_digests;
    j["window"] = {{"start", manifest.window_start}, {"end", manifest.window_end}};
    j["lag_order"] = manifest.lag_order;
    j["weight_scheme"] = manifest.weight_scheme;
    j["seed"] = manifest.seed;
    std::string created = manifest.created_utc;
    if (created.empty()) {
        auto now = std::chrono::system_clock::now();
        std::time_t t = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        created = buf;
    }
    j["created_utc"] = created;

    std::ofstream out(path);
    if (!out) fail(Errc::input_missing, "cannot write " + path.string());
    out << j.dump(2) << "\n";
}

}  // namespace gvarkit
