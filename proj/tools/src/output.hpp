#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wgof::cli {

/// Shortest round-trip decimal form; empty for NaN.
std::string num(double v);

/// Comma-separated table with a "# wgof-schema <name> v<version>" first line.
class CsvTable
{
  public:
    CsvTable(std::string schema, int version, std::vector<std::string> columns);

    /// Fields are quoted when they contain a comma, quote or newline. Throws
    /// std::logic_error on a column count mismatch.
    void row(std::vector<std::string> fields);

    std::string str() const;
    std::size_t rows() const noexcept { return rows_.size(); }

  private:
    std::string schema_;
    int version_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

std::string sha256_hex(const std::string& bytes);

/// Writes output files into a directory and records them for the manifest.
class RunManifest
{
  public:
    RunManifest(std::string command, std::vector<std::string> argv, std::filesystem::path out_dir);

    nlohmann::json& config() noexcept { return config_; }
    void note(const std::string& text) { notes_.push_back(text); }

    /// Writes `content` to out_dir/name and records its digest.
    void write(const std::string& name, const std::string& content);

    /// Writes <command>.manifest.json next to the outputs.
    void finish();

  private:
    std::string command_;
    std::vector<std::string> argv_;
    std::filesystem::path out_dir_;
    std::string started_;
    nlohmann::json config_ = nlohmann::json::object();
    nlohmann::json outputs_ = nlohmann::json::array();
    std::vector<std::string> notes_;
};

}  // namespace wgof::cli
