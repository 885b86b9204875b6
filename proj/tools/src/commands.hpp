#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wgof/mc.hpp"

namespace wgof::cli {

struct GlobalOptions {
    std::uint64_t seed = 1;
    std::size_t reps_critical = 100000;
    std::size_t reps_power = 10000;
    double alpha = 0.01;
    std::string workers = "auto";
    std::string out_dir = ".";
    /// Critical-value cache; --cache, else $WGOF_CACHE, else none.
    std::string cache;
    std::vector<std::string> argv;

    McConfig config() const;
};

struct StatArgs {
    std::string file;
    std::string null = "uniform";
    double mu0 = 0.0;
    double sigma0 = 1.0;
    std::vector<std::string> specs;
};

struct CritvalsArgs {
    std::vector<std::string> specs;
    std::vector<std::size_t> n;
};

struct PowerArgs {
    std::vector<std::string> models;
    std::vector<std::size_t> n;
    std::vector<std::string> specs;
};

struct FiguresArgs {
    std::string which;
    std::size_t steps = 20;
    std::size_t min_n = 100;
    std::optional<std::size_t> max_n;
    std::size_t fig3_n = 5000;
    double fig3_p = 0.1;
    std::size_t points = 25;
};

struct EfficiencyArgs {
    std::vector<std::string> models;
    std::vector<double> kappas{0.01, 0.05, 0.1, 0.25};
};

struct ProbeArgs {
    std::vector<std::string> specs;
    std::string w;
    std::vector<std::size_t> n;
    std::size_t reps = 1000000;
};

void cmd_stat(const GlobalOptions& g, const StatArgs& a);
void cmd_critvals(const GlobalOptions& g, const CritvalsArgs& a);
void cmd_power(const GlobalOptions& g, const PowerArgs& a);
void cmd_figures(const GlobalOptions& g, const FiguresArgs& a);
void cmd_efficiency(const GlobalOptions& g, const EfficiencyArgs& a);
void cmd_probe(const GlobalOptions& g, const ProbeArgs& a);

/// One value per line; blank lines and text after '#' are ignored. Throws
/// std::runtime_error naming the line on a parse error or an empty sample.
std::vector<double> read_values(const std::string& path, std::vector<std::size_t>* lines = nullptr);

}  // namespace wgof::cli
