#include "output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace wgof::cli {

namespace {

std::string quote_field(const std::string& f)
{
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
        return f;
    }
    std::string r = "\"";
    for (char c : f) {
        r += c;
        if (c == '"') {
            r += '"';
        }
    }
    return r + "\"";
}

std::string utc_now()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string num(double v)
{
    if (std::isnan(v)) {
        return "";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, r.ptr};
}

CsvTable::CsvTable(std::string schema, int version, std::vector<std::string> columns)
    : schema_(std::move(schema)), version_(version), columns_(std::move(columns))
{
}

void CsvTable::row(std::vector<std::string> fields)
{
    if (fields.size() != columns_.size()) {
        throw std::logic_error("csv " + schema_ + ": expected " + std::to_string(columns_.size()) + " fields, got " +
                               std::to_string(fields.size()));
    }
    rows_.push_back(std::move(fields));
}

std::string CsvTable::str() const
{
    std::string out = "# wgof-schema " + schema_ + " v" + std::to_string(version_) + "\n";
    auto line = [&out](const std::vector<std::string>& fs) {
        for (std::size_t i = 0; i < fs.size(); ++i) {
            out += (i ? "," : "") + quote_field(fs[i]);
        }
        out += "\n";
    };
    line(columns_);
    for (const auto& r : rows_) {
        line(r);
    }
    return out;
}

std::string sha256_hex(const std::string& bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned int i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

RunManifest::RunManifest(std::string command, std::vector<std::string> argv, std::filesystem::path out_dir)
    : command_(std::move(command)), argv_(std::move(argv)), out_dir_(std::move(out_dir)), started_(utc_now())
{
    std::filesystem::create_directories(out_dir_);
}

void RunManifest::write(const std::string& name, const std::string& content)
{
    const auto path = out_dir_ / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    outputs_.push_back({{"file", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
}

void RunManifest::finish()
{
    nlohmann::json m;
    m["tool"] = "wgof";
    m["version"] = WGOF_VERSION;
    m["command"] = command_;
    m["argv"] = argv_;
    m["config"] = config_;
    m["started"] = started_;
    m["finished"] = utc_now();
    m["outputs"] = outputs_;
    m["notes"] = notes_;
    const auto path = out_dir_ / (command_ + ".manifest.json");
    std::ofstream out(path, std::ios::binary);
    out << m.dump(2) << "\n";
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

}  // namespace wgof::cli
