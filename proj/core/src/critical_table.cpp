#include "wgof/mc.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace wgof {

namespace {

constexpr const char* kSchema = "# wgof-schema critical-values v1";
constexpr const char* kHeader = "kind,params,n,alpha,reps,seed,value,stderr";

std::string num(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

template <class T>
T parse_field(const std::string& s, const char* what, std::size_t line)
{
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error("critical-value cache line " + std::to_string(line) + ": bad " + what + " '" + s +
                                 "'");
    }
    return v;
}

std::string describe(const CriticalValueTable::Key& k)
{
    return std::get<0>(k) + " n=" + std::to_string(std::get<1>(k)) + " alpha=" + num(std::get<2>(k));
}

}  // namespace

const CriticalValue* CriticalValueTable::find(const StatisticSpec& spec, std::size_t n, double alpha) const
{
    auto it = entries_.find({spec.token(), n, alpha});
    return it == entries_.end() ? nullptr : &it->second;
}

void CriticalValueTable::insert(const StatisticSpec& spec, std::size_t n, double alpha, const CriticalValue& cv)
{
    const Key key{spec.token(), n, alpha};
    auto [it, fresh] = entries_.emplace(key, cv);
    if (!fresh) {
        const CriticalValue& old = it->second;
        if (old.seed != cv.seed || old.reps != cv.reps || old.value != cv.value) {
            throw ProvenanceConflict("critical value for " + describe(key) + " already cached with seed " +
                                     std::to_string(old.seed) + " and " + std::to_string(old.reps) +
                                     " replicates");
        }
    }
}

std::vector<CriticalValue> CriticalValueTable::get_or_compute(const std::vector<StatisticSpec>& specs,
                                                              std::size_t n, const McConfig& cfg)
{
    std::vector<StatisticSpec> missing;
    for (const auto& s : specs) {
        const CriticalValue* cv = find(s, n, cfg.alpha);
        if (cv == nullptr) {
            if (std::find(missing.begin(), missing.end(), s) == missing.end()) {
                missing.push_back(s);
            }
        } else if (cv->seed != cfg.seed || cv->reps != cfg.reps_critical) {
            throw ProvenanceConflict("cached critical value for " + describe({s.token(), n, cfg.alpha}) +
                                     " was made with seed " + std::to_string(cv->seed) + " and " +
                                     std::to_string(cv->reps) + " replicates; requested seed " +
                                     std::to_string(cfg.seed) + " and " + std::to_string(cfg.reps_critical));
        }
    }
    if (!missing.empty()) {
        const auto fresh = critical_values(missing, n, cfg);
        for (std::size_t i = 0; i < missing.size(); ++i) {
            insert(missing[i], n, cfg.alpha, fresh[i]);
        }
    }
    std::vector<CriticalValue> out;
    out.reserve(specs.size());
    for (const auto& s : specs) {
        out.push_back(*find(s, n, cfg.alpha));
    }
    return out;
}

std::string CriticalValueTable::to_csv() const
{
    std::ostringstream out;
    out << kSchema << '\n' << kHeader << '\n';
    for (const auto& [key, cv] : entries_) {
        const std::string& token = std::get<0>(key);
        const std::size_t colon = token.find(':');
        const std::string kind = token.substr(0, colon);
        const std::string params = colon == std::string::npos ? std::string() : token.substr(colon + 1);
        out << kind << ',' << params << ',' << std::get<1>(key) << ',' << num(std::get<2>(key)) << ',' << cv.reps
            << ',' << cv.seed << ',' << num(cv.value) << ',' << num(cv.stderr_) << '\n';
    }
    return out.str();
}

void CriticalValueTable::save(const std::string& path) const
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot write critical-value cache " + path);
    }
    f << to_csv();
}

CriticalValueTable CriticalValueTable::from_csv(const std::string& text)
{
    CriticalValueTable t;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool schema_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            if (line.rfind("# wgof-schema", 0) == 0) {
                if (line != kSchema) {
                    throw std::runtime_error("unsupported critical-value cache schema: " + line);
                }
                schema_seen = true;
            }
            continue;
        }
        if (line == kHeader) {
            continue;
        }
        if (!schema_seen) {
            throw std::runtime_error("critical-value cache lacks a schema line");
        }
        std::vector<std::string> f;
        std::size_t pos = 0;
        for (;;) {
            const std::size_t c = line.find(',', pos);
            f.push_back(line.substr(pos, c == std::string::npos ? std::string::npos : c - pos));
            if (c == std::string::npos) {
                break;
            }
            pos = c + 1;
        }
        if (f.size() != 8) {
            throw std::runtime_error("critical-value cache line " + std::to_string(lineno) + ": expected 8 fields");
        }
        const StatisticSpec spec = StatisticSpec::parse(f[1].empty() ? f[0] : f[0] + ":" + f[1]);
        CriticalValue cv;
        const auto n = parse_field<std::size_t>(f[2], "n", lineno);
        const auto alpha = parse_field<double>(f[3], "alpha", lineno);
        cv.reps = parse_field<std::size_t>(f[4], "reps", lineno);
        cv.seed = parse_field<std::uint64_t>(f[5], "seed", lineno);
        cv.value = parse_field<double>(f[6], "value", lineno);
        cv.stderr_ = parse_field<double>(f[7], "stderr", lineno);
        t.insert(spec, n, alpha, cv);
    }
    return t;
}

CriticalValueTable CriticalValueTable::load(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot read critical-value cache " + path);
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return from_csv(ss.str());
}

}  // namespace wgof
