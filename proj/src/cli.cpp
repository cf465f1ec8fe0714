#include "rhg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rhg/analysis.hpp"
#include "rhg/errors.hpp"
#include "rhg/fit.hpp"

namespace rhg::cli {

namespace {

std::string csvEscape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += (c == '\n' ? ' ' : c);
    }
    return out + "\"";
}

std::string joinCsv(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += csvEscape(fields[i]);
    }
    return line;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size();
    return k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

// Opens config.output, or returns the fallback stream when no path is set.
class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
        if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
        stream_ = file_.get();
    }
    std::ostream& stream() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

std::string statsLine(const GenerationResult& result, const GeneratorParams& params) {
    std::ostringstream s;
    s << "STATS\tn=" << result.graph.numVertices() << "\tm=" << result.graph.numEdges()
      << "\tR=" << formatRoundTrip(result.model.R) << "\talpha=" << formatRoundTrip(result.model.alpha)
      << "\tseed=" << params.seed << "\tthreads=" << params.threads
      << "\tisa=" << simd::isaName(params.isa) << "\tsampling_ns=" << result.timings.samplingNs
      << "\tbuild_ns=" << result.timings.buildNs << "\tedges_ns=" << result.timings.edgesNs
      << "\tlong_range_ns=" << result.timings.longRangeNs << "\ttotal_ns=" << result.timings.totalNs();
    return s.str();
}

} // namespace

void runGenerate(const RunConfig& config, std::ostream& out) {
    const GenerationResult result = generateDetailed(config.params);
    if (!config.output.empty()) {
        const EdgeListHeader header{result.graph.numVertices(), result.graph.numEdges(),
                                    config.params.seed, result.model.R, result.model.alpha};
        writeGraphFile(config.output, result.graph, config.format, header);
    }
    out << statsLine(result, config.params) << '\n';
    if (config.analyze) out << formatReport(analyze(result.graph));
}

void runAnalyze(const RunConfig& config, std::ostream& out) {
    if (config.input.empty()) throw ParameterError("analyze needs --input");
    const EdgeListFile file = readEdgeListFile(config.input);
    const std::string report = formatReport(analyze(file.graph));
    OutputTarget target(config.output, out);
    target.stream() << report;
}

void runBench(const RunConfig& config, std::ostream& out) {
    if (config.degreeList.empty()) throw ParameterError("bench needs --degree-list");
    if (config.reps == 0) throw ParameterError("--reps must be at least 1");
    OutputTarget target(config.output, out);
    std::ostream& os = target.stream();
    os << "n,target_avg_degree,gamma_or_alpha,rep,seed,m,sampling_ns,build_ns,edges_ns,total_ns\n";

    std::vector<std::vector<double>> features;
    std::vector<double> times;
    for (double k : config.degreeList) {
        std::vector<double> edgeTimes;
        double mSum = 0.0;
        for (std::size_t rep = 0; rep < config.reps; ++rep) {
            GeneratorParams p = config.params;
            p.avgDegree = k;
            p.radius.reset();
            p.seed = config.params.seed + rep;
            const GenerationResult r = generateDetailed(p);
            const double shape = p.gamma ? *p.gamma : *p.alpha;
            os << joinCsv({std::to_string(p.n), formatRoundTrip(k), formatRoundTrip(shape),
                           std::to_string(rep), std::to_string(p.seed), std::to_string(r.graph.numEdges()),
                           std::to_string(r.timings.samplingNs), std::to_string(r.timings.buildNs),
                           std::to_string(r.timings.edgesNs), std::to_string(r.timings.totalNs())})
               << '\n';
            edgeTimes.push_back(static_cast<double>(r.timings.edgesNs));
            mSum += static_cast<double>(r.graph.numEdges());
        }
        features.push_back({1.0, mSum / static_cast<double>(config.reps)});
        times.push_back(median(edgeTimes));
    }
    if (features.size() >= 2) {
        const LeastSquaresFit fit = leastSquares(features, times);
        os << "FIT\ta=" << formatRoundTrip(fit.coefficients[0]) << "\tb=" << formatRoundTrip(fit.coefficients[1])
           << "\tmax_rel_residual=" << formatRoundTrip(fit.maxRelativeResidual) << '\n';
    }
}

std::vector<std::string> sweepColumns() {
    std::vector<std::string> cols{"kind", "n_param", "target_avg_degree", "gamma", "rep", "seed", "status",
                                  "R", "alpha"};
    for (const auto& f : reportFieldNames()) cols.push_back(f);
    for (const char* t : {"sampling_ns", "build_ns", "edges_ns", "total_ns"}) cols.push_back(t);
    return cols;
}

void runSweep(const RunConfig& config, std::ostream& out) {
    if (config.nodesList.empty() || config.degreeList.empty() || config.gammaList.empty())
        throw ParameterError("sweep needs non-empty --nodes-list, --degree-list and --gamma-list");
    if (config.reps == 0) throw ParameterError("--reps must be at least 1");
    OutputTarget target(config.output, out);
    std::ostream& os = target.stream();
    os << joinCsv(sweepColumns()) << '\n';

    const std::size_t numeric = 2 + reportFieldNames().size() + 4;  // R, alpha, report, timings
    for (std::size_t n : config.nodesList) {
        for (double k : config.degreeList) {
            for (double gamma : config.gammaList) {
                std::vector<double> sums(numeric, 0.0);
                std::vector<std::size_t> counts(numeric, 0);
                std::size_t ok = 0;
                const std::vector<std::string> cell{std::to_string(n), formatRoundTrip(k), formatRoundTrip(gamma)};
                for (std::size_t rep = 0; rep < config.reps; ++rep) {
                    GeneratorParams p = config.params;
                    p.n = n;
                    p.avgDegree = k;
                    p.radius.reset();
                    p.gamma = gamma;
                    p.alpha.reset();
                    p.seed = config.params.seed + rep;
                    std::vector<std::string> row{"data", cell[0], cell[1], cell[2], std::to_string(rep),
                                                 std::to_string(p.seed)};
                    try {
                        const GenerationResult r = generateDetailed(p);
                        const AnalysisReport report = analyze(r.graph);
                        std::vector<std::string> values{formatRoundTrip(r.model.R), formatRoundTrip(r.model.alpha)};
                        for (auto& v : reportFieldValues(report)) values.push_back(v);
                        for (std::uint64_t t : {r.timings.samplingNs, r.timings.buildNs, r.timings.edgesNs,
                                                r.timings.totalNs()})
                            values.push_back(std::to_string(t));
                        row.push_back("ok");
                        for (std::size_t i = 0; i < values.size(); ++i) {
                            row.push_back(values[i]);
                            const double x = std::stod(values[i]);
                            if (!std::isnan(x)) {
                                sums[i] += x;
                                ++counts[i];
                            }
                        }
                        ++ok;
                    } catch (const std::exception& e) {
                        row.push_back(std::string("error: ") + e.what());
                        row.resize(sweepColumns().size());
                    }
                    os << joinCsv(row) << '\n';
                }
                std::vector<std::string> mean{"mean", cell[0], cell[1], cell[2], "", "",
                                              "ok " + std::to_string(ok) + "/" + std::to_string(config.reps)};
                for (std::size_t i = 0; i < numeric; ++i)
                    mean.push_back(counts[i] ? formatRoundTrip(sums[i] / static_cast<double>(counts[i])) : "nan");
                os << joinCsv(mean) << '\n';
            }
        }
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random hyperbolic graph generator"};
    app.require_subcommand(1);

    RunConfig config;
    GeneratorParams& p = config.params;
    std::size_t nodes = 0;
    double avgDegree = 0, radius = 0, gamma = 0, alpha = 0;
    std::string format = "edgelist";
    std::string isa = "auto";

    auto addModelFlags = [&](CLI::App* sub, bool grid) {
        if (!grid) {
            sub->add_option("--nodes", nodes, "Number of vertices")->required();
            auto* k = sub->add_option("--avg-degree", avgDegree, "Target average degree");
            auto* r = sub->add_option("--radius", radius, "Disk radius (native units)");
            k->excludes(r);
        }
        auto* g = sub->add_option("--gamma", gamma, "Degree power-law exponent (> 2)");
        auto* a = sub->add_option("--alpha", alpha, "Growth parameter (> 0.5)");
        g->excludes(a);
        sub->add_option("--seed", p.seed, "Random seed");
        sub->add_option("--threads", p.threads, "Worker threads for the edge phase");
        sub->add_option("--capacity", p.leafCapacity, "Quadtree leaf capacity");
        sub->add_option("--long-range-fraction", p.longRangeFraction, "Fraction of random extra edges");
        sub->add_option("--isa", isa, "Leaf-scan kernel: auto, scalar or avx2")
            ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
        sub->add_option("--output", config.output, "Output path");
    };

    CLI::App* gen = app.add_subcommand("generate", "Generate one graph");
    addModelFlags(gen, false);
    gen->add_option("--format", format, "Output format: edgelist or metis")
        ->check(CLI::IsMember({"edgelist", "metis"}));
    gen->add_flag("--analyze", config.analyze, "Print network properties");

    CLI::App* ana = app.add_subcommand("analyze", "Analyze an edge-list file");
    ana->add_option("--input", config.input, "Edge-list file")->required();
    ana->add_option("--output", config.output, "Report path (default stdout)");

    CLI::App* bench = app.add_subcommand("bench", "Time generation across average degrees");
    addModelFlags(bench, true);
    bench->add_option("--nodes", nodes, "Number of vertices")->required();
    bench->add_option("--degree-list", config.degreeList, "Average degrees")->delimiter(',')->required();
    bench->add_option("--reps", config.reps, "Repetitions per degree");

    CLI::App* sweep = app.add_subcommand("sweep", "Property sweep over a parameter grid");
    addModelFlags(sweep, true);
    sweep->add_option("--nodes-list", config.nodesList, "Vertex counts")->delimiter(',')->required();
    sweep->add_option("--degree-list", config.degreeList, "Average degrees")->delimiter(',')->required();
    sweep->add_option("--gamma-list", config.gammaList, "Exponents")->delimiter(',')->required();
    sweep->add_option("--reps", config.reps, "Repetitions per cell");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        p.n = nodes;
        if (gen->parsed() || bench->parsed() || sweep->parsed()) {
            if (gen->count("--avg-degree")) p.avgDegree = avgDegree;
            if (gen->count("--radius")) p.radius = radius;
            CLI::App* active = gen->parsed() ? gen : (bench->parsed() ? bench : sweep);
            if (active->count("--gamma")) p.gamma = gamma;
            if (active->count("--alpha")) p.alpha = alpha;
            if (isa == "scalar") p.isa = simd::Isa::Scalar;
            else if (isa == "avx2") {
                if (!simd::isaAvailable(simd::Isa::Avx2))
                    throw ParameterError("the avx2 kernel is not available on this machine");
                p.isa = simd::Isa::Avx2;
            }
            config.format = parseGraphFormat(format);
        }

        if (gen->parsed()) {
            config.subcommand = Subcommand::Generate;
            runGenerate(config, out);
        } else if (ana->parsed()) {
            config.subcommand = Subcommand::Analyze;
            runAnalyze(config, out);
        } else if (bench->parsed()) {
            config.subcommand = Subcommand::Bench;
            runBench(config, out);
        } else {
            config.subcommand = Subcommand::Sweep;
            if (p.alpha) throw ParameterError("sweep takes exponents via --gamma-list, not --alpha");
            p.gamma.reset();
            runSweep(config, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace rhg::cli
