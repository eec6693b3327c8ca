#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace gvarkit {

inline constexpr const char* kToolVersion = "0.1.0";

std::uint64_t fnv1a64(std::string_view bytes);
std::string to_hex(std::uint64_t value);

/// Digest of a file's bytes; missing files raise InputMissing.
std::string digest_file(const std::filesystem::path& path);

/// Provenance record for one CLI run. Every output file carries the config
/// hash as a leading comment; the timestamp lives only here.
struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string command;
    std::string config_hash;
    std::map<std::string, std::string> input_digests;
    std::string window_start;
    std::string window_end;
    int lag_order = 0;
    std::string weight_scheme;
    std::uint64_t seed = 0;
    std::string created_utc;

    /// Comment line embedded at the top of every output table.
    std::string reference() const { return "run " + config_hash; }
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace gvarkit
