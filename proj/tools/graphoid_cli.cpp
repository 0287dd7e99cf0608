// graphoid: command-line front end (validate, ingest, generate, query, repl,
// theorem1, bench).

#include "graphoid/gql.hpp"
#include "graphoid/store.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace graphoid;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CatalogPtr require_catalog(const std::string& dims) {
    if (dims.empty()) throw UsageError("--dims is required");
    return load_catalog(dims);
}

ExecPolicy policy_for(unsigned workers) { return ExecPolicy{workers ? workers : default_workers()}; }

int cmd_validate(const std::vector<std::string>& paths, const std::string& dims) {
    bool ok = true;
    CatalogPtr catalog;
    for (const auto& path : paths) {
        ValidationReport report;
        try {
            Json j = read_json(path);
            auto kind = detect_kind(j);
            if (kind == "schema") {
                report = validate_schema(schema_from_json(j));
            } else if (kind == "instance") {
                auto inst = instance_from_json(j);
                report = validate_schema(inst.schema);
                if (report.empty()) report = validate_instance(inst);
            } else if (kind == "catalog") {
                catalog_from_json(j);
            } else if (kind == "graphoid" || kind == "cube") {
                if (!catalog) catalog = require_catalog(dims);
                if (kind == "graphoid") graphoid_from_json(j, catalog);
                else cube_from_json(j, catalog);
            } else {
                report.push_back("unrecognized document");
            }
        } catch (const Error& e) {
            report.push_back(e.what());
        }
        if (report.empty()) {
            std::cout << path << ": ok\n";
        } else {
            ok = false;
            for (const auto& line : report) std::cout << path << ": " << line << '\n';
        }
    }
    return ok ? kOk : kFailed;
}

int cmd_ingest(const std::string& csv, const std::string& dims, const std::string& out) {
    auto catalog = require_catalog(dims);
    Graphoid g = [&] {
        if (csv == "-") return ingest_calls(std::cin, catalog);
        std::ifstream in(csv);
        if (!in) throw Error(ErrorCode::MalformedInput, csv + ": cannot open file");
        try {
            return ingest_calls(in, catalog);
        } catch (const Error& e) {
            throw Error(e.code(), csv + ": " + e.what());
        }
    }();
    write_text(out, graphoid_to_json(g).dump(2) + "\n");
    std::cerr << "ingested " << g.nodes().size() << " phones, " << g.edges().size() << " calls\n";
    return kOk;
}

int cmd_generate(GeneratorConfig config, const std::string& out) {
    auto data = generate(config);
    std::filesystem::create_directories(out);
    auto dir = std::filesystem::path(out);
    write_text((dir / "catalog.json").string(), catalog_to_json(*data.catalog).dump(2) + "\n");
    write_text((dir / "calls.csv").string(), calls_to_csv(data.calls));
    write_text((dir / "graph.json").string(), graphoid_to_json(data.graph).dump(2) + "\n");
    std::cout << "wrote " << data.calls.size() << " calls over " << data.graph.nodes().size() << " phones to " << out
              << '\n';
    return kOk;
}

std::string parent_dir(const std::string& file) {
    if (file == "-") return ".";
    auto p = std::filesystem::path(file).parent_path();
    return p.empty() ? "." : p.string();
}

Session open_session(const std::string& dims, const std::vector<std::string>& graphs, const std::string& base_dir,
                     unsigned workers) {
    auto catalog = require_catalog(dims);
    Session session(catalog, base_dir, policy_for(workers));
    for (const auto& spec : graphs) {
        auto eq = spec.find('=');
        std::string name = eq == std::string::npos ? "G" : spec.substr(0, eq);
        std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
        session.bind(name, load_graphoid(path, catalog));
    }
    return session;
}

int cmd_query(const std::string& file, const std::string& dims, const std::vector<std::string>& graphs,
              const std::string& out, const std::string& format, unsigned workers) {
    Session session = open_session(dims, graphs, parent_dir(file), workers);
    std::string text;
    try {
        text = read_text(file);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    Program program;
    try {
        program = parse_program(text);
    } catch (const Error& e) {
        std::cerr << file << ": " << e.what() << '\n';
        return kFailed;
    }
    if (auto report = session.check(program); !report.empty()) {
        for (const auto& line : report) std::cerr << file << ": " << line << '\n';
        return kFailed;
    }
    std::string rendered;
    try {
        for (auto o : session.run(program)) {
            // --format applies to outputs without an AS clause.
            if (!o.format && !format.empty()) o.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
            rendered += render(o);
        }
    } catch (const Error& e) {
        std::cerr << file << ": " << e.what() << '\n';
        return kFailed;
    }
    write_text(out.empty() ? "-" : out, rendered);
    return kOk;
}

int cmd_repl(const std::string& dims, const std::vector<std::string>& graphs, unsigned workers) {
    Session session = open_session(dims, graphs, ".", workers);
    run_repl(session, std::cin, std::cout, std::cerr, true);
    return kOk;
}

int cmd_theorem1(std::size_t trials, std::uint64_t seed, unsigned workers, const std::string& report_path) {
    auto result = run_theorem1(trials, seed, policy_for(workers));
    std::string lines;
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
        const auto& r = result.reports[i];
        std::cout << "trial " << i << ": " << (r.equivalent ? "PASS" : "FAIL") << "  " << r.op << '\n';
        for (const auto& m : r.mismatches) std::cout << "    " << m << '\n';
        lines += r.to_json_line(i) + "\n";
    }
    if (!report_path.empty()) write_text(report_path, lines);
    std::cout << result.equivalent << "/" << result.trials << " equivalent\n";
    return result.equivalent == result.trials ? kOk : kFailed;
}

int cmd_bench(const GeneratorConfig& config, unsigned workers) {
    using clock = std::chrono::steady_clock;
    const auto policy = policy_for(workers);
    auto t0 = clock::now();
    auto data = generate(config);
    auto seconds = [](clock::time_point a) { return std::chrono::duration<double>(clock::now() - a).count(); };
    std::cout << "generated " << data.calls.size() << " calls, " << data.graph.nodes().size() << " phones in "
              << seconds(t0) << " s (workers: " << policy.workers << ")\n";
    const auto& g = data.graph;
    const std::string bottom = data.catalog->at("Phone").bottom();
    auto q = [&](const std::string& name, auto&& body) {
        auto start = clock::now();
        std::size_t rows = body();
        std::cout << name << ": " << seconds(start) << " s, " << rows << " rows\n";
    };
    for (std::size_t n : {2, 3}) {
        q("Q1 N=" + std::to_string(n), [&] {
            return group_averages(g, "Phone", {"Phone", bottom, bottom}, "Call", "Duration", n, policy).size();
        });
        q("Q2 N=" + std::to_string(n), [&] {
            return group_averages(g, "Phone", {"Phone", bottom, "Customer"}, "Call", "Duration", n, policy).size();
        });
        q("Q3 N=" + std::to_string(n), [&] {
            return group_averages(g, "Phone", {"Phone", bottom, "Operator"}, "Call", "Duration", n, policy).size();
        });
    }
    auto paths = [&](std::optional<Condition> from, std::optional<Condition> to) {
        return shortest_paths(g, {"Phone", std::move(from)}, {"Phone", std::move(to)}, TargetSet::all(), policy).size();
    };
    q("Q4", [&] { return paths(std::nullopt, std::nullopt); });
    q("Q5", [&] {
        return paths(parse_condition("Phone.Operator = \"Claro\""), parse_condition("Phone.Operator = \"Movistar\""));
    });
    q("Q6", [&] {
        return paths(parse_condition("Phone.City = \"Buenos Aires\""), parse_condition("Phone.City = \"Salta\""));
    });
    q("Q7", [&] { return paths(parse_condition("Phone.City = \"Buenos Aires\""), std::nullopt); });
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph OLAP over graphoids"};
    app.require_subcommand(1);

    std::string dims, out, format, preset = "desk", report_path;
    std::vector<std::string> graphs, paths;
    std::uint64_t seed = 1;
    std::size_t trials = 200;
    unsigned workers = 0;
    GeneratorConfig config;
    std::optional<std::size_t> calls, phones, users, max_group;

    auto add_workers = [&](CLI::App* cmd) {
        cmd->add_option("--workers", workers, "Worker threads (default: GRAPHOID_WORKERS or 1)");
    };
    auto add_generator = [&](CLI::App* cmd) {
        cmd->add_option("--preset", preset, "desk, d1 or d2")->check(CLI::IsMember({"desk", "d1", "d2"}));
        cmd->add_option("--calls", calls, "Number of calls");
        cmd->add_option("--phones", phones, "Number of phones");
        cmd->add_option("--users", users, "Number of users");
        cmd->add_option("--max-group", max_group, "Largest call group (>= 2)");
        cmd->add_option("--seed", seed, "Random seed");
    };

    auto* validate = app.add_subcommand("validate", "Validate schema, instance, catalog, graphoid or cube files");
    validate->add_option("paths", paths, "JSON files")->required();
    validate->add_option("--dims", dims, "Catalog for graphoid and cube files");

    auto* ingest = app.add_subcommand("ingest", "Build a graphoid from a Calls CSV");
    std::string csv;
    ingest->add_option("csv", csv, "CSV file or -")->required();
    ingest->add_option("--dims", dims, "Catalog with Phone and Time dimensions")->required();
    ingest->add_option("--out", out, "Output graphoid JSON (default: stdout)");

    auto* gen = app.add_subcommand("generate", "Generate a synthetic call dataset");
    add_generator(gen);
    gen->add_option("--out", out, "Output directory")->required();

    auto* query = app.add_subcommand("query", "Run a query program");
    std::string program_file;
    query->add_option("program", program_file, "Program file or -")->required();
    query->add_option("--dims", dims, "Catalog")->required();
    query->add_option("--graph", graphs, "Bind a graphoid file, as NAME=path (NAME defaults to G)");
    query->add_option("--out", out, "Output file (default: stdout)");
    query->add_option("--format", format, "Default output format")->check(CLI::IsMember({"json", "csv"}));
    add_workers(query);

    auto* repl = app.add_subcommand("repl", "Interactive query session");
    repl->add_option("--dims", dims, "Catalog")->required();
    repl->add_option("--graph", graphs, "Bind a graphoid file, as NAME=path");
    add_workers(repl);

    auto* theorem = app.add_subcommand("theorem1", "Cube / star-graphoid equivalence harness");
    theorem->add_option("--trials", trials, "Number of random trials");
    theorem->add_option("--seed", seed, "Random seed");
    theorem->add_option("--out", report_path, "Write one JSON line per trial");
    add_workers(theorem);

    auto* bench = app.add_subcommand("bench", "Time the case-study queries on generated data");
    add_generator(bench);
    add_workers(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    auto make_config = [&] {
        GeneratorConfig c = preset == "d1" ? GeneratorConfig::d1() : preset == "d2" ? GeneratorConfig::d2() : GeneratorConfig::desk();
        if (calls) c.call_count = *calls;
        if (phones) c.phone_count = *phones;
        if (users) c.user_count = *users;
        if (max_group) c.max_group_size = *max_group;
        c.seed = seed;
        return c;
    };

    try {
        if (*validate) return cmd_validate(paths, dims);
        if (*ingest) return cmd_ingest(csv, dims, out.empty() ? "-" : out);
        if (*gen) return cmd_generate(make_config(), out);
        if (*query) return cmd_query(program_file, dims, graphs, out, format, workers);
        if (*repl) return cmd_repl(dims, graphs, workers);
        if (*theorem) return cmd_theorem1(trials, seed, workers, report_path);
        if (*bench) return cmd_bench(make_config(), workers);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kUsage;
}
