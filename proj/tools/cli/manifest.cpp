#include "manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tailband/error.hpp"

namespace tailband::cli {

std::string sha256_hex(std::string_view bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), Errc::FileNotFound, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

void OutputSet::add(const std::string& name, std::string content)
{
    files_.emplace_back(name, std::move(content));
}

void OutputSet::commit(const std::vector<std::string>& replay_args, std::uint64_t seed,
                       const std::vector<std::filesystem::path>& inputs) const
{
    std::filesystem::create_directories(dir_);
    nlohmann::json m;
    m["args"] = replay_args;
    std::string line = "tailband";
    for (const auto& a : replay_args) {
        line += ' ' + a;
    }
    m["command_line"] = line;
    m["seed"] = seed;
    m["version"] = std::string("tailband ") + TAILBAND_VERSION;
    m["inputs"] = nlohmann::json::object();
    for (const auto& in : inputs) {
        m["inputs"][in.string()] = sha256_file(in);
    }
    m["outputs"] = nlohmann::json::array();
    for (const auto& [name, content] : files_) {
        std::ofstream(dir_ / name, std::ios::binary) << content;
        m["outputs"].push_back({{"file", name}, {"sha256", sha256_hex(content)}});
    }
    std::ofstream(dir_ / manifest_name, std::ios::binary) << m.dump(2) << '\n';
}

}  // namespace tailband::cli
