#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tailband::cli {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Files produced by one command, written under a single directory.
class OutputSet {
public:
    explicit OutputSet(std::filesystem::path dir);

    void add(const std::string& name, std::string content);
    /// Writes every file plus manifest.json describing the run.
    void commit(const std::vector<std::string>& replay_args, std::uint64_t seed,
                const std::vector<std::filesystem::path>& inputs) const;

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

inline constexpr std::string_view manifest_name = "manifest.json";

}  // namespace tailband::cli
