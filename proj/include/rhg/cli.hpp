#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rhg/generator.hpp"
#include "rhg/io.hpp"

namespace rhg::cli {

enum class Subcommand { Generate, Analyze, Bench, Sweep };

struct RunConfig {
    Subcommand subcommand = Subcommand::Generate;
    GeneratorParams params;
    std::string output;  // empty: generate writes no file, sweep/bench write to stdout
    std::string input;   // analyze only
    GraphFormat format = GraphFormat::EdgeList;
    bool analyze = false;
    std::vector<std::size_t> nodesList;
    std::vector<double> degreeList;
    std::vector<double> gammaList;
    std::size_t reps = 1;
};

/// Generates one graph, writes it when an output path is set and prints the
/// STATS line (and the report with --analyze) to out.
void runGenerate(const RunConfig& config, std::ostream& out);

/// Reads an edge list and prints the analysis report.
void runAnalyze(const RunConfig& config, std::ostream& out);

/// Times generation for each average degree in degreeList at fixed n and
/// fits edge-phase time = a + b * m.
void runBench(const RunConfig& config, std::ostream& out);

/// One CSV row per (n, degree, gamma, rep) plus one mean row per cell.
void runSweep(const RunConfig& config, std::ostream& out);

/// CSV header used by runSweep.
std::vector<std::string> sweepColumns();

/// Parses argv and dispatches. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace rhg::cli
