// manifest.hpp
// Run manifests: every file the CLI writes gets a sibling `<output>.manifest`
// holding the subcommand and every resolved flag, enough to regenerate the
// output byte for byte.

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "qdating/csv.hpp"
#include "qdating/error.hpp"

namespace qdating {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunManifest {
    std::string subcommand;
    KeyValues parameters;  // flag name (without dashes) -> resolved value
    std::string output;
    std::string tool_version = kToolVersion;

    KeyValues to_key_values() const {
        KeyValues kv = parameters;
        kv["subcommand"] = subcommand;
        kv["out"] = output;
        kv["tool_version"] = tool_version;
        return kv;
    }

    static RunManifest from_key_values(KeyValues kv) {
        RunManifest m;
        const auto take = [&](const char* key) {
            const auto it = kv.find(key);
            if (it == kv.end()) throw ConfigError(std::string("manifest is missing '") + key + "'");
            std::string v = it->second;
            kv.erase(it);
            return v;
        };
        m.subcommand = take("subcommand");
        m.output = take("out");
        m.tool_version = take("tool_version");
        m.parameters = std::move(kv);
        return m;
    }
};

inline std::string manifest_path_for(const std::string& output) { return output + ".manifest"; }

inline void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw Error("failed writing '" + path + "'");
}

inline void write_manifest(const RunManifest& manifest) {
    std::ostringstream text;
    write_key_values(text, manifest.to_key_values());
    write_text_file(manifest_path_for(manifest.output), text.str());
}

inline RunManifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open manifest '" + path + "'");
    return RunManifest::from_key_values(read_key_values(in));
}

}  // namespace qdating
