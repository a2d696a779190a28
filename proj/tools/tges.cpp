// Command-line front end: discover, simulate, estimate, evaluate, bench.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tges/tges.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kFailure = 1, kBadInput = 2, kLabelMismatch = 3 };

/// Bad flags or config values detected after parsing; exits with kBadInput.
class UsageError : public tges::Error {
public:
    using Error::Error;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// ---------------------------------------------------------------------------
// Configuration

json option_value(const CLI::Option& opt, const std::string& text) {
    const std::string type = opt.get_type_name();
    try {
        if (type.find("UINT") != std::string::npos) return std::stoull(text);
        if (type.find("INT") != std::string::npos) return std::stoll(text);
        if (type.find("FLOAT") != std::string::npos) return std::stod(text);
    } catch (const std::exception&) {
    }
    return text;
}

/// Long option name -> value, for every configurable option of `app`.
json effective_config(const CLI::App& app, bool default_also) {
    json out = json::object();
    for (const CLI::Option* opt : app.get_options()) {
        if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
        const std::string& name = opt->get_lnames().front();
        if (name == "help" || name == "config") continue;
        if (opt->get_expected_max() == 0) {
            out[name] = opt->count() > 0;
            continue;
        }
        std::vector<std::string> values;
        if (opt->count() > 0) {
            values = opt->results();
        } else if (default_also && !opt->get_default_str().empty()) {
            values = {opt->get_default_str()};
        } else {
            continue;
        }
        if (opt->get_expected_max() > 1) {
            json arr = json::array();
            for (const std::string& v : values) arr.push_back(option_value(*opt, v));
            out[name] = arr;
        } else {
            out[name] = option_value(*opt, values.back());
        }
    }
    return out;
}

/// JSON config files: a flat object keyed by long option names of the chosen
/// subcommand. A nested object keyed by a subcommand name also works.
class JsonConfig : public CLI::Config {
public:
    explicit JsonConfig(const CLI::App& root) : root_(root) {}

    std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
        return effective_config(*app, default_also).dump(2) + "\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
        json doc;
        try {
            in >> doc;
        } catch (const json::exception& e) {
            throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) throw CLI::ConversionError("config must be a JSON object");
        std::vector<std::string> parents;
        for (const CLI::App* sub : root_.get_subcommands()) parents.push_back(sub->get_name());
        std::vector<CLI::ConfigItem> items;
        flatten(doc, parents, items);
        return items;
    }

private:
    static void flatten(const json& obj, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) {
        const auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
        for (const auto& [key, value] : obj.items()) {
            if (value.is_object()) {
                flatten(value, {key}, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const json& v : value) item.inputs.push_back(text(v));
            } else {
                item.inputs.push_back(text(value));
            }
            items.push_back(std::move(item));
        }
    }

    const CLI::App& root_;
};

// ---------------------------------------------------------------------------
// Shared helpers

std::size_t default_jobs() { return 1; }

template <class Body>
void parallel_for(std::size_t count, std::size_t jobs, Body&& body) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, std::max<std::size_t>(count, 1));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next++;
            if (i >= count) return;
            {
                std::lock_guard lock(error_mutex);
                if (error) return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }
    if (error) std::rethrow_exception(error);
}

std::string replicate_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "rep_%04zu", index + 1);
    return buf;
}

std::shared_ptr<const tges::Dataset> load_data(const fs::path& path) {
    auto in = tges::io::open_input(path);
    return std::make_shared<const tges::Dataset>(tges::io::read_dataset_csv(in, path.string()));
}

tges::TieredKnowledge load_tiers(const fs::path& path, const std::vector<std::string>& labels) {
    auto in = tges::io::open_input(path);
    return tges::io::read_tiers(in, labels, path.string());
}

/// Variable names in file order, taken from a tier file.
std::vector<std::string> tier_file_labels(const fs::path& path) {
    auto in = tges::io::open_input(path);
    return tges::io::read_tier_table(in, path.string()).variables;
}

tges::Pdag load_edge_list(const fs::path& path, const std::vector<std::string>& labels) {
    auto in = tges::io::open_input(path);
    return tges::io::read_edge_list(in, labels, path.string());
}

tges::SearchResult run_algorithm(const std::string& algo, std::shared_ptr<const tges::Dataset> data,
                                 const std::optional<tges::TieredKnowledge>& k, double lambda,
                                 bool record_trace = true) {
    tges::SearchOptions options;
    options.record_trace = record_trace;
    tges::SearchResult r;
    if (algo == "ges") {
        r = tges::ges(tges::GaussianScorer(data, std::nullopt, lambda), options);
    } else {
        if (!k) throw UsageError(algo + " needs a tier file (--tiers)");
        if (algo == "stges") {
            r = tges::stges(tges::GaussianScorer(data, std::nullopt, lambda), *k, options);
        } else {
            r = tges::tges(tges::GaussianScorer(data, k, lambda), options);
        }
    }
    r.graph.set_labels(data->labels());
    return r;
}

/// Immediate subdirectories of `dir` that contain `marker`, sorted by name.
std::vector<std::string> subdirs_with(const fs::path& dir, const std::string& marker) {
    std::vector<std::string> names;
    if (!fs::is_directory(dir)) return names;
    for (const fs::directory_entry& e : fs::directory_iterator(dir)) {
        if (e.is_directory() && fs::exists(e.path() / marker)) names.push_back(e.path().filename().string());
    }
    std::sort(names.begin(), names.end());
    return names;
}

void write_manifest(const fs::path& out_dir, const CLI::App& cmd, Clock::time_point t0, json extra) {
    json doc = {
        {"command", cmd.get_name()},
        {"tool_version", kVersion},
        {"config", effective_config(cmd, true)},
    };
    for (auto& [key, value] : extra.items()) doc[key] = std::move(value);
    doc["wall_seconds"] = seconds_since(t0);
    tges::io::write_file_atomic(out_dir / "manifest.json", doc.dump(2) + "\n");
}

std::string csv_rate(const std::optional<double>& v) { return v ? tges::io::format_double(*v) : "NA"; }

// ---------------------------------------------------------------------------
// discover

struct DiscoverArgs {
    std::string data;
    std::string tiers;
    std::string algo = "tges";
    double lambda = 1.0;
    std::string out;
};

void cmd_discover(const CLI::App& cmd, const DiscoverArgs& a) {
    const auto t0 = Clock::now();
    const auto data = load_data(a.data);
    std::optional<tges::TieredKnowledge> k;
    if (!a.tiers.empty()) k = load_tiers(a.tiers, data->labels());
    const tges::SearchResult r = run_algorithm(a.algo, data, k, a.lambda);

    const fs::path out(a.out);
    tges::io::write_file_atomic(out / "graph.txt", tges::io::write_edge_list(r.graph));
    tges::io::write_file_atomic(out / "graph.csv", tges::io::write_adjacency_csv(r.graph));
    tges::io::write_file_atomic(out / "trace.csv", tges::write_trace_csv(r.trace, data->labels()));
    write_manifest(out, cmd, t0,
                   {{"inputs", {{"data", a.data}, {"tiers", a.tiers}}},
                    {"outputs", {"graph.txt", "graph.csv", "trace.csv"}},
                    {"result",
                     {{"edges", r.graph.num_edges()},
                      {"score", tges::io::format_double(r.score.value())},
                      {"steps", r.stats.steps},
                      {"cycles", r.stats.cycles}}}});
    std::cout << a.algo << ": " << r.graph.num_edges() << " edges written to " << out.string() << '\n';
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    tges::SimConfig cfg;
    std::size_t replicates = 10;
    std::size_t jobs = default_jobs();
    std::string out;
};

void cmd_simulate(const CLI::App& cmd, const SimulateArgs& a) {
    const auto t0 = Clock::now();
    try {
        a.cfg.validate();
    } catch (const tges::Error& e) {
        throw UsageError(e.what());
    }
    if (a.replicates < 1) throw UsageError("--replicates must be >= 1");

    const fs::path out(a.out);
    std::vector<std::string> rows(a.replicates);
    parallel_for(a.replicates, a.jobs, [&](std::size_t i) {
        const tges::Replicate rep = tges::simulate_replicate(a.cfg, i);
        const std::string name = replicate_name(i);
        const fs::path dir = out / name;
        const auto& labels = rep.truth.dag.labels();
        tges::io::write_file_atomic(dir / "truth.txt", tges::io::write_edge_list(rep.truth.dag));
        tges::io::write_file_atomic(dir / "target.txt", tges::io::write_edge_list(rep.truth.target));
        tges::io::write_file_atomic(dir / "tiers.csv", tges::io::write_tiers(rep.truth.knowledge, labels));
        tges::io::write_file_atomic(dir / "data.csv", tges::io::write_dataset_csv(rep.data));
        std::ostringstream row;
        row << name << ',' << rep.truth.dag.size() << ',' << tges::io::format_double(rep.truth.edge_prob) << ','
            << a.cfg.n << ',' << rep.seed << ',' << rep.truth.dag.num_edges() << '\n';
        rows[i] = row.str();
    });

    std::string table = "replicate,d,p,n,seed,edges\n";
    for (const std::string& row : rows) table += row;
    tges::io::write_file_atomic(out / "replicates.csv", table);
    write_manifest(out, cmd, t0,
                   {{"seed", a.cfg.seed},
                    {"replicates", a.replicates},
                    {"outputs", {"replicates.csv", "rep_*/{truth.txt,target.txt,tiers.csv,data.csv}"}}});
    std::cout << "simulated " << a.replicates << " replicates in " << out.string() << '\n';
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateArgs {
    std::string sim;
    std::vector<std::string> algos{"ges", "stges", "tges"};
    double lambda = 1.0;
    std::size_t jobs = default_jobs();
    std::string out;
};

void cmd_estimate(const CLI::App& cmd, const EstimateArgs& a) {
    const auto t0 = Clock::now();
    const std::vector<std::string> reps = subdirs_with(a.sim, "data.csv");
    if (reps.empty()) throw UsageError("no replicate directories with data.csv under " + a.sim);

    const fs::path out(a.out);
    std::vector<std::vector<std::string>> rows(reps.size(), std::vector<std::string>(a.algos.size()));
    parallel_for(reps.size(), a.jobs, [&](std::size_t i) {
        const fs::path dir = fs::path(a.sim) / reps[i];
        const auto data = load_data(dir / "data.csv");
        const tges::TieredKnowledge k = load_tiers(dir / "tiers.csv", data->labels());
        for (std::size_t j = 0; j < a.algos.size(); ++j) {
            const tges::SearchResult r = run_algorithm(a.algos[j], data, k, a.lambda, false);
            const fs::path target = out / a.algos[j] / reps[i];
            tges::io::write_file_atomic(target / "graph.txt", tges::io::write_edge_list(r.graph));
            tges::io::write_file_atomic(target / "graph.csv", tges::io::write_adjacency_csv(r.graph));
            rows[i][j] = a.algos[j] + ',' + reps[i] + ',' + std::to_string(r.graph.num_edges()) + ',' +
                         tges::io::format_double(r.score.value()) + ',' + std::to_string(r.stats.steps) + '\n';
        }
    });

    std::string table = "algorithm,replicate,edges,score,steps\n";
    for (std::size_t j = 0; j < a.algos.size(); ++j) {
        for (std::size_t i = 0; i < reps.size(); ++i) table += rows[i][j];
    }
    tges::io::write_file_atomic(out / "runs.csv", table);
    write_manifest(out, cmd, t0,
                   {{"inputs", {{"sim", a.sim}}},
                    {"replicates", reps.size()},
                    {"outputs", {"runs.csv", "<algorithm>/rep_*/{graph.txt,graph.csv}"}}});
    std::cout << "estimated " << reps.size() << " replicates with " << a.algos.size() << " algorithms\n";
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
    std::string est;
    std::string truth;
    std::string out;
    bool plot = false;
};

const std::vector<std::string> kMetricNames{
    "sshd",
    "adjacency_precision",
    "adjacency_recall",
    "direction_precision",
    "direction_recall",
    "in_tier_direction_precision",
    "in_tier_direction_recall",
};

std::vector<std::optional<double>> metric_values(const tges::EvalReport& r) {
    return {r.sshd,
            r.adjacency.precision(),
            r.adjacency.recall(),
            r.all_direction.precision(),
            r.all_direction.recall(),
            r.in_tier_direction.precision(),
            r.in_tier_direction.recall()};
}

using Aggregates = std::map<std::string, std::vector<std::optional<tges::Quartiles>>>;

// Box plots as hand-written SVG. One panel per metric, one box per algorithm.
class SvgCanvas {
public:
    SvgCanvas(double width, double height) : width_(width), height_(height) {}

    void panel(double x, double y, double w, double h, const std::string& title,
               const std::vector<std::pair<std::string, std::optional<tges::Quartiles>>>& boxes, double y_max) {
        const double left = x + 40, right = x + w - 10, top = y + 25, bottom = y + h - 30;
        const auto ypos = [&](double v) { return bottom - (bottom - top) * std::clamp(v / y_max, 0.0, 1.0); };
        body_ << "<text x=\"" << (x + w / 2) << "\" y=\"" << (y + 15)
              << "\" text-anchor=\"middle\" font-size=\"13\">" << title << "</text>\n";
        body_ << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
              << "\" stroke=\"black\"/>\n";
        body_ << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\"" << bottom
              << "\" stroke=\"black\"/>\n";
        for (int t = 0; t <= 4; ++t) {
            const double v = y_max * t / 4.0;
            body_ << "<text x=\"" << (left - 4) << "\" y=\"" << (ypos(v) + 4)
                  << "\" text-anchor=\"end\" font-size=\"10\">" << tges::io::format_double(v) << "</text>\n";
        }
        const double slot = (right - left) / static_cast<double>(std::max<std::size_t>(boxes.size(), 1));
        for (std::size_t b = 0; b < boxes.size(); ++b) {
            const double cx = left + slot * (static_cast<double>(b) + 0.5);
            const double half = std::min(25.0, slot * 0.3);
            body_ << "<text x=\"" << cx << "\" y=\"" << (bottom + 16) << "\" text-anchor=\"middle\" font-size=\"11\">"
                  << boxes[b].first << "</text>\n";
            if (!boxes[b].second) continue;
            const tges::Quartiles& q = *boxes[b].second;
            body_ << "<line x1=\"" << cx << "\" y1=\"" << ypos(q.min) << "\" x2=\"" << cx << "\" y2=\"" << ypos(q.max)
                  << "\" stroke=\"black\"/>\n";
            body_ << "<rect x=\"" << (cx - half) << "\" y=\"" << ypos(q.q3) << "\" width=\"" << 2 * half
                  << "\" height=\"" << (ypos(q.q1) - ypos(q.q3)) << "\" fill=\"#9ecae1\" stroke=\"black\"/>\n";
            body_ << "<line x1=\"" << (cx - half) << "\" y1=\"" << ypos(q.median) << "\" x2=\"" << (cx + half)
                  << "\" y2=\"" << ypos(q.median) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        }
    }

    std::string str() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\"" << height_
            << "\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

private:
    double width_;
    double height_;
    std::ostringstream body_;
};

void write_plots(const fs::path& out, const Aggregates& agg) {
    const auto boxes = [&](std::size_t metric) {
        std::vector<std::pair<std::string, std::optional<tges::Quartiles>>> b;
        for (const auto& [algo, qs] : agg) b.emplace_back(algo, qs[metric]);
        return b;
    };
    double sshd_max = 0.0;
    for (const auto& [algo, qs] : agg) {
        if (qs[0]) sshd_max = std::max(sshd_max, qs[0]->max);
    }
    SvgCanvas sshd(420, 320);
    sshd.panel(0, 0, 420, 320, "sSHD", boxes(0), sshd_max > 0.0 ? sshd_max : 1.0);
    tges::io::write_file_atomic(out / "sshd.svg", sshd.str());

    // Precision on the top row, recall on the bottom; adjacency, all directions, in-tier directions.
    SvgCanvas pr(3 * 300, 2 * 260);
    const char* titles[] = {"adjacency", "all directions", "in-tier directions"};
    for (int col = 0; col < 3; ++col) {
        for (int row = 0; row < 2; ++row) {
            const std::size_t metric = 1 + 2 * static_cast<std::size_t>(col) + static_cast<std::size_t>(row);
            pr.panel(col * 300.0, row * 260.0, 300, 260,
                     std::string(titles[col]) + (row == 0 ? " precision" : " recall"), boxes(metric), 1.0);
        }
    }
    tges::io::write_file_atomic(out / "precision_recall.svg", pr.str());
}

void cmd_evaluate(const CLI::App& cmd, const EvaluateArgs& a) {
    const auto t0 = Clock::now();
    const std::vector<std::string> truth_reps = subdirs_with(a.truth, "target.txt");
    if (truth_reps.empty()) throw UsageError("no replicate directories with target.txt under " + a.truth);

    // Either <est>/<algorithm>/rep_*/graph.txt or <est>/rep_*/graph.txt.
    std::map<std::string, fs::path> algo_dirs;
    if (!subdirs_with(a.est, "graph.txt").empty()) {
        algo_dirs["estimate"] = a.est;
    } else if (fs::is_directory(a.est)) {
        for (const fs::directory_entry& e : fs::directory_iterator(a.est)) {
            if (e.is_directory() && !subdirs_with(e.path(), "graph.txt").empty()) {
                algo_dirs[e.path().filename().string()] = e.path();
            }
        }
    }
    if (algo_dirs.empty()) throw UsageError("no estimated graphs found under " + a.est);
    for (const auto& [algo, dir] : algo_dirs) {
        if (subdirs_with(dir, "graph.txt") != truth_reps) {
            throw UsageError("replicates of '" + algo + "' in " + dir.string() + " do not match " + a.truth);
        }
    }

    std::ostringstream per;
    per << "algorithm,replicate";
    for (const std::string& m : kMetricNames) per << ',' << m;
    per << '\n';
    std::map<std::string, std::vector<std::vector<std::optional<double>>>> values;
    for (const auto& [algo, dir] : algo_dirs) {
        auto& columns = values[algo];
        columns.assign(kMetricNames.size(), {});
        for (const std::string& rep : truth_reps) {
            const fs::path tdir = fs::path(a.truth) / rep;
            const std::vector<std::string> labels = tier_file_labels(tdir / "tiers.csv");
            const tges::TieredKnowledge k = load_tiers(tdir / "tiers.csv", labels);
            const tges::Pdag truth = load_edge_list(tdir / "target.txt", labels);
            const tges::Pdag est = load_edge_list(dir / rep / "graph.txt", labels);
            const std::vector<std::optional<double>> v = metric_values(tges::evaluate(est, truth, k));
            per << algo << ',' << rep;
            for (std::size_t m = 0; m < v.size(); ++m) {
                per << ',' << csv_rate(v[m]);
                columns[m].push_back(v[m]);
            }
            per << '\n';
        }
    }

    Aggregates agg;
    std::ostringstream aggregate;
    aggregate << "metric,algorithm,count,min,q1,median,q3,max\n";
    for (const auto& [algo, columns] : values) {
        for (const auto& column : columns) agg[algo].push_back(tges::summarize(column));
    }
    for (std::size_t m = 0; m < kMetricNames.size(); ++m) {
        for (const auto& [algo, qs] : agg) {
            aggregate << kMetricNames[m] << ',' << algo << ',';
            if (!qs[m]) {
                aggregate << "0,NA,NA,NA,NA,NA\n";
                continue;
            }
            const tges::Quartiles& q = *qs[m];
            aggregate << q.count << ',' << tges::io::format_double(q.min) << ',' << tges::io::format_double(q.q1)
                      << ',' << tges::io::format_double(q.median) << ',' << tges::io::format_double(q.q3) << ','
                      << tges::io::format_double(q.max) << '\n';
        }
    }

    const fs::path out(a.out);
    tges::io::write_file_atomic(out / "per_replicate.csv", per.str());
    tges::io::write_file_atomic(out / "aggregate.csv", aggregate.str());
    json outputs = {"per_replicate.csv", "aggregate.csv"};
    if (a.plot) {
        write_plots(out, agg);
        outputs.push_back("sshd.svg");
        outputs.push_back("precision_recall.svg");
    }
    write_manifest(out, cmd, t0,
                   {{"inputs", {{"est", a.est}, {"truth", a.truth}}},
                    {"replicates", truth_reps.size()},
                    {"outputs", outputs}});
    std::cout << "evaluated " << algo_dirs.size() << " algorithms on " << truth_reps.size() << " replicates\n";
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
    std::size_t d_min = 3;
    std::size_t d_max = 6;
    std::size_t reps = 5;
    std::size_t n = 1000;
    std::uint64_t seed = 1;
    std::string out;
};

void cmd_bench(const CLI::App& cmd, const BenchArgs& a) {
    const auto t0 = Clock::now();
    if (a.d_min < 2 || a.d_min > a.d_max) throw UsageError("node range must satisfy 2 <= d-min <= d-max");
    if (a.reps < 1) throw UsageError("--reps must be >= 1");
    std::ostringstream table;
    table << "d,algorithm,reps,stage_one_seconds,total_seconds\n";
    for (std::size_t d = a.d_min; d <= a.d_max; ++d) {
        tges::SimConfig cfg;
        cfg.d_min = cfg.d_max = d;
        cfg.tiers = std::min<std::size_t>(3, d);
        cfg.n = a.n;
        cfg.seed = tges::derive_seed(a.seed, d);
        std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> times;
        for (std::size_t r = 0; r < a.reps; ++r) {
            const tges::Replicate rep = tges::simulate_replicate(cfg, r);
            const auto data = std::make_shared<const tges::Dataset>(rep.data);
            for (const std::string algo : {"ges", "tges"}) {
                const tges::SearchResult res = run_algorithm(algo, data, rep.truth.knowledge, 1.0, false);
                times[algo].first.push_back(res.stats.stage_one_seconds);
                times[algo].second.push_back(res.stats.total_seconds);
            }
        }
        for (const std::string algo : {"ges", "tges"}) {
            table << d << ',' << algo << ',' << a.reps << ',' << tges::io::format_double(tges::median(times[algo].first))
                  << ',' << tges::io::format_double(tges::median(times[algo].second)) << '\n';
        }
    }
    const fs::path out(a.out);
    tges::io::write_file_atomic(out / "bench.csv", table.str());
    write_manifest(out, cmd, t0, {{"seed", a.seed}, {"outputs", {"bench.csv"}}});
    std::cout << table.str();
}

// ---------------------------------------------------------------------------
// oracle (hidden)

struct OracleArgs {
    std::string data;
    std::string tiers;
    double lambda = 1.0;
};

void cmd_oracle(const OracleArgs& a) {
    const auto data = load_data(a.data);
    if (data->d() > tges::kMaxEnumerationNodes) {
        throw UsageError("oracle enumerates at most " + std::to_string(tges::kMaxEnumerationNodes) + " variables");
    }
    std::optional<tges::TieredKnowledge> k;
    if (!a.tiers.empty()) k = load_tiers(a.tiers, data->labels());
    const tges::GaussianScorer scorer(data, k, a.lambda);
    std::vector<tges::Pdag> best = tges::best_scoring_graphs(scorer);
    std::cout << "# " << best.size() << " best-scoring DAGs, score "
              << tges::io::format_double(scorer.total_score(best.front()).value()) << '\n';
    for (tges::Pdag& g : best) {
        g.set_labels(data->labels());
        std::cout << tges::io::write_edge_list(g) << "#\n";
    }
    tges::Pdag cls = k ? tges::tiered_mpdag_of(best.front(), *k) : tges::dag_to_cpdag(best.front());
    cls.set_labels(data->labels());
    std::cout << "# class\n" << tges::io::write_edge_list(cls);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Causal discovery with tiered background knowledge"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.config_formatter(std::make_shared<JsonConfig>(app));
    app.set_config("--config", "", "JSON file with option values for the subcommand (flags take precedence)");
    app.fallthrough();
    app.allow_config_extras(CLI::config_extras_mode::error);

    const auto algo_check = CLI::IsMember({"ges", "stges", "tges"});

    DiscoverArgs discover;
    CLI::App* c_discover = app.add_subcommand("discover", "Learn a graph from a dataset");
    c_discover->add_option("--data", discover.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
    c_discover->add_option("--tiers", discover.tiers, "Tier file (variable,tier); required for stges and tges")
        ->check(CLI::ExistingFile);
    c_discover->add_option("--algo", discover.algo, "Search algorithm")->check(algo_check);
    c_discover->add_option("--lambda", discover.lambda, "Penalty scale")->check(CLI::NonNegativeNumber);
    c_discover->add_option("--out", discover.out, "Output directory")->required();

    SimulateArgs simulate;
    CLI::App* c_simulate = app.add_subcommand("simulate", "Generate replicate datasets with known truth");
    c_simulate->add_option("--replicates", simulate.replicates, "Number of replicates");
    c_simulate->add_option("--seed", simulate.cfg.seed, "Study seed");
    c_simulate->add_option("--n", simulate.cfg.n, "Observations per replicate");
    c_simulate->add_option("--d-min", simulate.cfg.d_min, "Smallest node count");
    c_simulate->add_option("--d-max", simulate.cfg.d_max, "Largest node count");
    c_simulate->add_option("--edge-prob-min", simulate.cfg.edge_prob_min, "Lower bound of the edge probability");
    c_simulate->add_option("--edge-prob-max", simulate.cfg.edge_prob_max, "Upper bound of the edge probability");
    c_simulate->add_option("--tiers", simulate.cfg.tiers, "Number of tiers");
    c_simulate->add_option("--weight-min", simulate.cfg.weight_min, "Lower bound of edge weights");
    c_simulate->add_option("--weight-max", simulate.cfg.weight_max, "Upper bound of edge weights");
    c_simulate->add_option("--jobs", simulate.jobs, "Worker threads (0: all cores)")->envname("TGES_JOBS");
    c_simulate->add_option("--out", simulate.out, "Output directory")->required();

    EstimateArgs estimate;
    CLI::App* c_estimate = app.add_subcommand("estimate", "Run algorithms on every simulated replicate");
    c_estimate->add_option("--sim", estimate.sim, "Directory written by simulate")
        ->required()->check(CLI::ExistingDirectory);
    c_estimate->add_option("--algo", estimate.algos, "Algorithms")->delimiter(',')->check(algo_check);
    c_estimate->add_option("--lambda", estimate.lambda, "Penalty scale")->check(CLI::NonNegativeNumber);
    c_estimate->add_option("--jobs", estimate.jobs, "Worker threads (0: all cores)")->envname("TGES_JOBS");
    c_estimate->add_option("--out", estimate.out, "Output directory")->required();

    EvaluateArgs evaluate;
    CLI::App* c_evaluate = app.add_subcommand("evaluate", "Compare estimates with the simulated truth");
    c_evaluate->add_option("--est", evaluate.est, "Directory written by estimate")
        ->required()->check(CLI::ExistingDirectory);
    c_evaluate->add_option("--truth", evaluate.truth, "Directory written by simulate")
        ->required()->check(CLI::ExistingDirectory);
    c_evaluate->add_option("--out", evaluate.out, "Output directory")->required();
    c_evaluate->add_flag("--plot", evaluate.plot, "Also write SVG box plots");

    BenchArgs bench;
    CLI::App* c_bench = app.add_subcommand("bench", "Time ges and tges across node counts");
    c_bench->add_option("--d-min", bench.d_min, "Smallest node count");
    c_bench->add_option("--d-max", bench.d_max, "Largest node count");
    c_bench->add_option("--reps", bench.reps, "Repetitions per node count");
    c_bench->add_option("--n", bench.n, "Observations per dataset");
    c_bench->add_option("--seed", bench.seed, "Seed");
    c_bench->add_option("--out", bench.out, "Output directory")->required();

    OracleArgs oracle;
    CLI::App* c_oracle = app.add_subcommand("oracle", "Exhaustive best-scoring DAGs for tiny datasets");
    c_oracle->group("");
    c_oracle->add_option("--data", oracle.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
    c_oracle->add_option("--tiers", oracle.tiers, "Tier file")->check(CLI::ExistingFile);
    c_oracle->add_option("--lambda", oracle.lambda, "Penalty scale")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (c_discover->parsed()) cmd_discover(*c_discover, discover);
        if (c_simulate->parsed()) cmd_simulate(*c_simulate, simulate);
        if (c_estimate->parsed()) cmd_estimate(*c_estimate, estimate);
        if (c_evaluate->parsed()) cmd_evaluate(*c_evaluate, evaluate);
        if (c_bench->parsed()) cmd_bench(*c_bench, bench);
        if (c_oracle->parsed()) cmd_oracle(oracle);
    } catch (const tges::LabelMismatchError& e) {
        std::cerr << "tges: error: " << e.what() << '\n';
        return kLabelMismatch;
    } catch (const tges::ParseError& e) {
        std::cerr << "tges: error: " << e.what() << '\n';
        return kBadInput;
    } catch (const UsageError& e) {
        std::cerr << "tges: error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "tges: error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}
