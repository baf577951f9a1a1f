// disten — batch front end for the lattice distance-energy toolkit.
//
// Subcommands: r-table, disk-count, histogram, energy, model-compare,
// verify-lemma1, verify-lemma2, constants, breakdown, adjudicate, cache.
//
// Exit codes: 0 success, 1 usage error, 2 capacity/budget error,
// 3 numerical non-convergence. Errors go to stderr as "E<code>: message".
// Every run writes a JSON manifest (command, config, versions, wall time,
// output checksums) into the output directory.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "disten/adjudicator.hpp"
#include "disten/arith.hpp"
#include "disten/geometry.hpp"
#include "disten/histogram_io.hpp"
#include "disten/homog_sum.hpp"
#include "disten/lattice.hpp"
#include "disten/profiles.hpp"
#include "disten/report.hpp"
#include "disten/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace disten;

namespace {

u64 fnv64_file(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    u64 h = 1469598103934665603ull;
    char c;
    while (is.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

// counts print exactly: JSON integer when it fits 64 bits, decimal string above
json json_count(u128 v) {
    if (v <= static_cast<u128>(std::numeric_limits<u64>::max()))
        return json(static_cast<u64>(v));
    return json(to_string(v));
}

// accepts "1000000" and "1e6" alike for scalar count options
const CLI::Validator SciCount(
    [](std::string& input) -> std::string {
        try {
            double v = std::stod(input);
            if (v < 0 || v > 9.2e18) return "value out of range: " + input;
            input = std::to_string(static_cast<u64>(v + 0.5));
            return {};
        } catch (const std::exception&) {
            return "not a number: " + input;
        }
    },
    "COUNT");

// comma-separated values, scientific notation accepted; kept sorted ascending
std::vector<u64> parse_u64_list(const std::vector<std::string>& raw) {
    std::vector<u64> out;
    for (const std::string& chunk : raw) {
        std::stringstream ss(chunk);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            double v = std::stod(item);
            if (v < 0 || v > 9.2e18) throw CLI::ValidationError("value out of range: " + item);
            out.push_back(static_cast<u64>(v + 0.5));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct Context {
    unsigned threads = 0;
    std::string format = "text";
    std::string out_file;              // primary export; stdout when empty
    fs::path out_dir = "disten-out";
    fs::path cache_dir;
    Limits limits;
    double tol = 1e-10;

    std::vector<std::string> argv;
    std::string command;
    json config = json::object();
    std::vector<fs::path> outputs;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    // Writes content to --out (tracked in the manifest) or to stdout.
    void emit_primary(const std::string& content) {
        if (out_file.empty()) {
            std::cout << content;
            return;
        }
        write_file(out_file, content);
    }

    // Streaming variant for exports too large to buffer.
    void emit_stream(const std::function<void(std::ostream&)>& writer) {
        if (out_file.empty()) {
            writer(std::cout);
            return;
        }
        fs::path path = out_file;
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        fs::path tmp = path;
        tmp += ".tmp";
        {
            std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
            if (!os) throw std::runtime_error("cannot write " + path.string());
            writer(os);
            if (!os) throw std::runtime_error("short write to " + tmp.string());
        }
        fs::rename(tmp, path);
        outputs.push_back(path);
    }

    void write_file(const fs::path& path, const std::string& content) {
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        fs::path tmp = path;
        tmp += ".tmp";
        {
            std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
            if (!os) throw std::runtime_error("cannot write " + path.string());
            os << content;
        }
        fs::rename(tmp, path);
        outputs.push_back(path);
    }

    void write_manifest() {
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                    started)
                          .count();
        json m;
        m["command"] = command;
        m["argv"] = argv;
        m["config"] = config;
        m["library_version"] = library_version;
        m["histogram_cache_version"] = histogram_cache_version;
        m["wall_time_s"] = wall;
        m["outputs"] = json::array();
        for (const fs::path& p : outputs)
            m["outputs"].push_back({{"path", p.string()},
                                    {"bytes", fs::file_size(p)},
                                    {"fnv64", fnv64_file(p)}});
        fs::create_directories(out_dir);
        std::ofstream os(out_dir / "run-manifest.json", std::ios::trunc);
        os << m.dump(2) << '\n';
    }
};

// histogram fetch with optional binary cache
DistanceHistogram load_or_compute_histogram(Context& ctx, SetKind kind, u64 N,
                                            const std::string& backend, bool use_cache) {
    if (use_cache) {
        fs::create_directories(ctx.cache_dir);
        auto cached = read_histogram_file(histogram_cache_path(ctx.cache_dir, kind, N),
                                          kind, N);
        if (cached) return *cached;
    }
    PointSet p = build_point_set(kind, N, ctx.limits);
    std::string chosen = backend;
    if (chosen == "auto") chosen = p.points.size() <= 2000 ? "pairs" : "scan";
    DistanceHistogram h = chosen == "pairs"
                              ? histogram_pairs(p, ctx.threads, ctx.limits)
                              : histogram_vector_scan(p, ctx.threads, ctx.limits);
    if (use_cache)
        write_histogram_file(h, histogram_cache_path(ctx.cache_dir, kind, N));
    return h;
}

// ---------------------------------------------------------------- commands

void cmd_r_table(Context& ctx, u64 limit) {
    ctx.config = {{"limit", limit}};
    ReprTable t = build_repr_table(limit, ctx.limits, ctx.threads);
    ctx.emit_stream([&](std::ostream& os) { export_repr_csv(t, os); });
}

void cmd_disk_count(Context& ctx, const std::vector<u64>& Ns) {
    ctx.config = {{"N", Ns}};
    json rows = json::array();
    std::ostringstream text, csv;
    csv << "N,count,pi_N,dev_over_sqrtN\n";
    char line[160];
    for (u64 N : Ns) {
        u64 count = disk_cardinality(N);
        double piN = M_PI * static_cast<double>(N);
        double dev = (static_cast<double>(count) - piN) /
                     std::sqrt(static_cast<double>(N ? N : 1));
        rows.push_back({{"N", N},
                        {"count", count},
                        {"pi_N", round12(piN)},
                        {"dev_over_sqrtN", round12(dev)}});
        std::snprintf(line, sizeof line, "%12llu %14llu %18s %14s\n",
                      static_cast<unsigned long long>(N),
                      static_cast<unsigned long long>(count), fmt12(piN).c_str(),
                      fmt12(dev).c_str());
        text << line;
        csv << N << ',' << count << ',' << fmt12(piN) << ',' << fmt12(dev) << '\n';
    }
    if (ctx.format == "json")
        ctx.emit_primary(json(rows).dump(2) + "\n");
    else if (ctx.format == "csv")
        ctx.emit_primary(csv.str());
    else
        ctx.emit_primary(text.str());
}

void cmd_histogram(Context& ctx, const std::string& kind_s, u64 N,
                   const std::string& backend, bool use_cache) {
    SetKind kind = set_kind_from_string(kind_s);
    ctx.config = {{"kind", kind_s}, {"N", N}, {"backend", backend}, {"cache", use_cache}};
    DistanceHistogram h = load_or_compute_histogram(ctx, kind, N, backend, use_cache);
    ctx.emit_stream([&](std::ostream& os) { export_histogram_csv(h, os); });
}

void cmd_energy(Context& ctx, const std::string& kind_s, u64 N,
                const std::string& backend, bool use_cache) {
    SetKind kind = set_kind_from_string(kind_s);
    ctx.config = {{"kind", kind_s}, {"N", N}, {"backend", backend}};
    DistanceHistogram h = load_or_compute_histogram(ctx, kind, N, backend, use_cache);
    u128 excl = energy(h, false), incl = energy(h, true);
    json j;
    j["kind"] = kind_s;
    j["N"] = N;
    j["backend"] = backend;
    j["points"] = h.zero_count;
    j["E2_excl"] = json_count(excl);
    j["E2_incl"] = json_count(incl);
    j["distinct_distances"] = distinct_distances(h);
    j["pair_total"] = json_count(ordered_pair_total(h));
    if (ctx.format == "json") {
        ctx.emit_primary(j.dump(2) + "\n");
    } else if (ctx.format == "csv") {
        std::ostringstream os;
        os << "kind,N,points,E2_excl,E2_incl,distinct\n"
           << kind_s << ',' << N << ',' << h.zero_count << ',' << to_string(excl) << ','
           << to_string(incl) << ',' << distinct_distances(h) << '\n';
        ctx.emit_primary(os.str());
    } else {
        std::ostringstream os;
        os << "kind " << kind_s << "  N " << N << "  points " << h.zero_count << '\n'
           << "E2 (zero distance excluded) " << to_string(excl) << '\n'
           << "E2 (zero distance included) " << to_string(incl) << '\n'
           << "distinct distances " << distinct_distances(h) << '\n';
        ctx.emit_primary(os.str());
    }
}

void cmd_model_compare(Context& ctx, u64 N, bool use_cache) {
    ctx.config = {{"N", N}};
    DistanceHistogram h = load_or_compute_histogram(ctx, SetKind::disk, N, "scan", use_cache);
    ReprTable t = build_repr_table(4 * N, ctx.limits, ctx.threads);

    double worst = 0.0;
    double model_total = 0.0;
    for (u64 n = 1; n <= 4 * N; ++n) {
        double model = model_R(n, N, t.r_at(n));
        model_total += model;
        worst = std::max(worst, std::abs(static_cast<double>(h.at(n)) - model) /
                                    static_cast<double>(N));
    }
    double pair_total = static_cast<double>(to_long_double(ordered_pair_total(h)));

    if (!ctx.out_file.empty())
        ctx.emit_stream([&](std::ostream& os) { export_model_csv(h, t, os); });
    json j = {{"N", N},
              {"max_abs_dev_over_N", round12(worst)},
              {"model_mass_ratio", round12(model_total / pair_total)}};
    if (ctx.format == "json")
        std::cout << j.dump(2) << '\n';
    else
        std::cout << "N " << N << "  max |R - model|/N = " << fmt12(worst)
                  << "  sum(model)/pairs = " << fmt12(model_total / pair_total) << '\n';
}

void cmd_verify_lemma1(Context& ctx, const std::string& profile, double alpha,
                       const std::string& slow, double beta,
                       const std::vector<u64>& Ns, const std::vector<u64>& Ks) {
    ctx.config = {{"profile", profile}, {"slow", slow}, {"N", Ns}, {"K", Ks}};
    HomogeneousSpec f = profile_registry(profile, alpha);
    SlowFactor g = slow_factor_registry(slow, beta);

    json rows = json::array();
    std::ostringstream text, csv;
    csv << "N,K,direct,lower,upper,predict,direct_over_predict,resolved\n";
    char line[240];
    std::snprintf(line, sizeof line, "%10s %8s %16s %16s %16s %16s %12s %9s\n", "N", "K",
                  "direct", "lower", "upper", "predict", "ratio", "resolved");
    text << line;
    for (u64 N : Ns) {
        double direct = direct_sum(f, g, N, ctx.threads);
        double pred = predict(f, g, N, ctx.tol);
        for (u64 K : Ks) {
            BlockEstimate est = block_estimate(f, g, N, K == 0 ? default_block_count(N) : K);
            rows.push_back({{"N", N},
                            {"K", est.K},
                            {"direct", round12(direct)},
                            {"lower", round12(est.lower)},
                            {"upper", round12(est.upper)},
                            {"predict", round12(pred)},
                            {"direct_over_predict", round12(direct / pred)},
                            {"resolved", est.all_resolved}});
            std::snprintf(line, sizeof line, "%10llu %8llu %16s %16s %16s %16s %12s %9s\n",
                          static_cast<unsigned long long>(N),
                          static_cast<unsigned long long>(est.K), fmt12(direct).c_str(),
                          fmt12(est.lower).c_str(), fmt12(est.upper).c_str(),
                          fmt12(pred).c_str(), fmt12(direct / pred).c_str(),
                          est.all_resolved ? "yes" : "no");
            text << line;
            csv << N << ',' << est.K << ',' << fmt12(direct) << ',' << fmt12(est.lower)
                << ',' << fmt12(est.upper) << ',' << fmt12(pred) << ','
                << fmt12(direct / pred) << ',' << (est.all_resolved ? "yes" : "no")
                << '\n';
        }
    }
    if (ctx.format == "json")
        ctx.emit_primary(json(rows).dump(2) + "\n");
    else if (ctx.format == "csv")
        ctx.emit_primary(csv.str());
    else
        ctx.emit_primary(text.str());
}

void cmd_verify_lemma2(Context& ctx, u64 limit, std::vector<u64> checkpoints) {
    if (checkpoints.empty())
        for (u64 x = 10'000; x <= limit; x *= 10) checkpoints.push_back(x);
    ctx.config = {{"limit", limit}, {"checkpoints", checkpoints}};
    ReprTable t = build_repr_table(limit, ctx.limits, ctx.threads);
    auto ratios = verify_lemma2(t, checkpoints);

    json rows = json::array();
    std::ostringstream text, csv;
    csv << "x,ratio\n";
    for (const auto& [x, ratio] : ratios) {
        rows.push_back({{"x", x}, {"ratio", round12(ratio)}});
        text << "E(" << x << ") / (4 x ln x) = " << fmt12(ratio) << '\n';
        csv << x << ',' << fmt12(ratio) << '\n';
    }
    if (ctx.format == "json")
        ctx.emit_primary(json(rows).dump(2) + "\n");
    else if (ctx.format == "csv")
        ctx.emit_primary(csv.str());
    else
        ctx.emit_primary(text.str());
}

void cmd_constants(Context& ctx) {
    ctx.config = {{"tol", ctx.tol}};
    auto cands = candidate_constants(ctx.tol);
    double c1 = limit_constant(profile_registry("c1-integrand"), ctx.tol).value;
    double c2 = limit_constant(profile_registry("c2-integrand"), ctx.tol).value;
    double w_mass = 4.0 * limit_constant(profile_registry("w"), ctx.tol).value;

    if (ctx.format == "json") {
        json j;
        j["c1"] = round12(c1);
        j["c2"] = round12(c2);
        j["int_w_0_4"] = round12(w_mass);
        j["candidates"] = json::array();
        for (const auto& c : cands)
            j["candidates"].push_back({{"label", c.label},
                                       {"value", round12(c.value)},
                                       {"provenance", c.provenance}});
        ctx.emit_primary(j.dump(2) + "\n");
        return;
    }
    std::ostringstream os;
    if (ctx.format == "csv") {
        os << "label,value,provenance\n";
        os << "c1," << fmt12(c1) << ",quadrature\n";
        os << "c2," << fmt12(c2) << ",quadrature\n";
        os << "int_w_0_4," << fmt12(w_mass) << ",quadrature\n";
        for (const auto& c : cands)
            os << c.label << ',' << fmt12(c.value) << ',' << c.provenance << '\n';
    } else {
        os << "c1 = " << fmt12(c1) << "   c2 = " << fmt12(c2)
           << "   int_0^4 w = " << fmt12(w_mass) << '\n';
        for (const auto& c : cands) {
            char line[160];
            std::snprintf(line, sizeof line, "%-18s %16s   [%s]\n", c.label.c_str(),
                          fmt12(c.value).c_str(), c.provenance.c_str());
            os << line;
        }
    }
    ctx.emit_primary(os.str());
}

void cmd_breakdown(Context& ctx, u64 N, bool with_exact) {
    ctx.config = {{"N", N}, {"with_exact", with_exact}};
    ReprTable t = build_repr_table(4 * N, ctx.limits, ctx.threads);
    EnergyBreakdown br = breakdown(N, t, ctx.threads);
    if (with_exact) {
        PointSet p = build_point_set(SetKind::disk, N, ctx.limits);
        br.exact_e2 = energy(histogram_vector_scan(p, ctx.threads, ctx.limits), false);
    }
    json j = {{"N", N},
              {"term1", round12(br.term1)},
              {"term2", round12(br.term2)},
              {"term3", round12(br.term3)},
              {"total", round12(br.total)},
              {"term2_transformed", round12(br.term2_transformed)}};
    if (br.exact_e2) {
        j["E2_exact"] = json_count(*br.exact_e2);
        j["total_over_exact"] =
            round12(br.total / static_cast<double>(to_long_double(*br.exact_e2)));
    }
    if (ctx.format == "json") {
        ctx.emit_primary(j.dump(2) + "\n");
        return;
    }
    std::ostringstream os;
    os << "N " << N << '\n'
       << "term1 " << fmt12(br.term1) << '\n'
       << "term2 " << fmt12(br.term2) << "   (transformed form " << fmt12(br.term2_transformed)
       << ")\n"
       << "term3 " << fmt12(br.term3) << '\n'
       << "total " << fmt12(br.total) << '\n';
    if (br.exact_e2)
        os << "E2 exact " << to_string(*br.exact_e2) << "   total/exact "
           << fmt12(br.total / static_cast<double>(to_long_double(*br.exact_e2))) << '\n';
    ctx.emit_primary(os.str());
}

void append_energy_ledger(Context& ctx, const EnergyBreakdown& br, u128 e2_excl) {
    fs::create_directories(ctx.cache_dir);
    fs::path ledger = ctx.cache_dir / "energy-ledger.csv";
    bool fresh = !fs::exists(ledger);
    std::ofstream os(ledger, std::ios::app);
    if (fresh) os << "version,kind,N,E2_excl,term1,term2,term3,total\n";
    os << histogram_cache_version << ",disk," << br.N << ',' << to_string(e2_excl) << ','
       << fmt12(br.term1) << ',' << fmt12(br.term2) << ',' << fmt12(br.term3) << ','
       << fmt12(br.total) << '\n';
}

void cmd_adjudicate(Context& ctx, const std::vector<u64>& Ns, std::vector<u64> remark_Ns,
                    bool with_breakdown) {
    ctx.config = {{"samples", Ns}, {"remark_N", remark_Ns}, {"breakdown", with_breakdown}};
    std::vector<AdjudicationSample> samples;
    for (u64 N : Ns) {
        DistanceHistogram h = load_or_compute_histogram(ctx, SetKind::disk, N, "scan", true);
        u128 e2 = energy(h, false);
        samples.push_back(make_sample(N, e2));
        if (with_breakdown) {
            ReprTable t = build_repr_table(4 * N, ctx.limits, ctx.threads);
            append_energy_ledger(ctx, breakdown(N, t, ctx.threads), e2);
        }
    }
    if (remark_Ns.empty()) remark_Ns = {1000, 10'000, 100'000, 1'000'000};
    AdjudicationReport rep =
        adjudicate(samples, candidate_constants(ctx.tol),
                   slow_convergence_table(remark_Ns, ctx.tol, ctx.threads));
    if (ctx.format == "json")
        ctx.emit_primary(report_json(rep).dump(2) + "\n");
    else
        ctx.emit_primary(report_text(rep));
}

void cmd_cache(Context& ctx, const std::string& action) {
    ctx.config = {{"action", action}};
    fs::create_directories(ctx.cache_dir);
    if (action == "inspect") {
        std::ostringstream os;
        for (const auto& entry : fs::directory_iterator(ctx.cache_dir))
            os << entry.path().filename().string() << "  " << fs::file_size(entry.path())
               << " bytes\n";
        std::string s = os.str();
        ctx.emit_primary(s.empty() ? "cache is empty\n" : s);
    } else if (action == "clear") {
        u64 removed = 0;
        for (const auto& entry : fs::directory_iterator(ctx.cache_dir))
            removed += fs::remove_all(entry.path());
        ctx.emit_primary("removed " + std::to_string(removed) + " cache entries\n");
    } else {
        throw CLI::ValidationError("cache action must be inspect or clear");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact distance-energy counting and asymptotics for lattice point sets"};
    app.require_subcommand(1);
    app.fallthrough(true); // global options may follow the subcommand

    Context ctx;
    for (int i = 0; i < argc; ++i) ctx.argv.emplace_back(argv[i]);
    const char* env_cache = std::getenv("DISTEN_CACHE_DIR");
    ctx.cache_dir = env_cache ? fs::path(env_cache) : fs::path("disten-cache");

    app.add_option("--threads", ctx.threads, "worker threads (0 = hardware)");
    app.add_option("--format", ctx.format, "text | csv | json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--out", ctx.out_file, "primary output file (default stdout)");
    app.add_option("--out-dir", ctx.out_dir, "directory for the run manifest");
    app.add_option("--cache-dir", ctx.cache_dir,
                   "histogram cache directory (env DISTEN_CACHE_DIR)");
    app.add_option("--table-cells", ctx.limits.table_cells, "r-table cell budget")
        ->check(CLI::PositiveNumber);
    app.add_option("--hist-cells", ctx.limits.histogram_cells, "histogram cell budget")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-points", ctx.limits.points, "point-set size budget")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", ctx.tol, "quadrature tolerance")->check(CLI::PositiveNumber);

    // r-table
    u64 rt_limit = 100;
    auto* rt = app.add_subcommand("r-table", "sieve r(n) and its prefix sums, export CSV");
    rt->add_option("--limit", rt_limit, "table limit M")->required()->transform(SciCount);

    // disk-count
    std::vector<std::string> dc_ns;
    auto* dc = app.add_subcommand("disk-count", "lattice points in disks of radius sqrt(N)");
    dc->add_option("--n", dc_ns, "N values (comma separated)")->required();

    // histogram
    std::string h_kind = "disk", h_backend = "auto";
    u64 h_n = 2;
    bool h_cache = false;
    auto* hg = app.add_subcommand("histogram", "exact squared-distance histogram CSV");
    hg->add_option("--kind", h_kind)->check(CLI::IsMember({"disk", "grid"}));
    hg->add_option("--n", h_n, "scale N")->required()->transform(SciCount);
    hg->add_option("--backend", h_backend)->check(CLI::IsMember({"pairs", "scan", "auto"}));
    hg->add_flag("--cache", h_cache, "use the binary histogram cache");

    // energy
    std::string e_kind = "disk", e_backend = "auto";
    u64 e_n = 2;
    bool e_cache = false;
    auto* en = app.add_subcommand("energy", "distance energy E2 of a point set");
    en->add_option("--kind", e_kind)->check(CLI::IsMember({"disk", "grid"}));
    en->add_option("--n", e_n, "scale N")->required()->transform(SciCount);
    en->add_option("--backend", e_backend)->check(CLI::IsMember({"pairs", "scan", "auto"}));
    en->add_flag("--cache", e_cache);

    // model-compare
    u64 mc_n = 1000;
    bool mc_cache = false;
    auto* mc = app.add_subcommand("model-compare", "exact R(n) against the arc-weight model");
    mc->add_option("--n", mc_n, "disk scale N")->required()->transform(SciCount);
    mc->add_flag("--cache", mc_cache);

    // verify-lemma1
    std::string l1_profile = "linear", l1_slow = "log";
    double l1_alpha = 0.0, l1_beta = 2.0;
    std::vector<std::string> l1_ns{"10000"}, l1_ks{"0"};
    auto* l1 = app.add_subcommand("verify-lemma1",
                                  "direct sum vs block sandwich vs limit law");
    l1->add_option("--profile", l1_profile, "unit profile name");
    l1->add_option("--alpha", l1_alpha, "degree for power-alpha");
    l1->add_option("--slow", l1_slow, "slow factor: log | log-pow | loglog");
    l1->add_option("--beta", l1_beta, "exponent for log-pow");
    l1->add_option("--n", l1_ns, "N values");
    l1->add_option("--k", l1_ks, "block counts (0 = default schedule)");

    // verify-lemma2
    u64 l2_limit = 1'000'000;
    std::vector<std::string> l2_cps;
    auto* l2 = app.add_subcommand("verify-lemma2", "E(x) / (4 x ln x) at checkpoints");
    l2->add_option("--limit", l2_limit, "table limit")->transform(SciCount);
    l2->add_option("--checkpoints", l2_cps, "x values (default decades)");

    // constants
    auto* co = app.add_subcommand("constants", "candidate leading constants via quadrature");

    // breakdown
    u64 bd_n = 100;
    bool bd_exact = false;
    auto* bd = app.add_subcommand("breakdown", "three-term weighted decomposition of E2");
    bd->add_option("--n", bd_n, "disk scale N")->required()->transform(SciCount);
    bd->add_flag("--with-exact", bd_exact, "also compute exact E2 by vector scan");

    // adjudicate
    std::vector<std::string> ad_ns{"10000,30000,100000"};
    std::vector<std::string> ad_remark;
    bool ad_breakdown = false;
    auto* ad = app.add_subcommand("adjudicate", "fit exact E2 samples, rank candidates");
    ad->add_option("--samples", ad_ns, "exact-E2 sample N values");
    ad->add_option("--remark-n", ad_remark, "N values for the slow-convergence table");
    ad->add_flag("--with-breakdown", ad_breakdown, "append term breakdowns to the ledger");

    // cache
    std::string cache_action;
    auto* ca = app.add_subcommand("cache", "inspect or clear the histogram cache");
    ca->add_option("action", cache_action, "inspect | clear")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "E1: " << e.what() << '\n';
        return 1;
    }

    try {
        if (rt->parsed()) {
            ctx.command = "r-table";
            cmd_r_table(ctx, rt_limit);
        } else if (dc->parsed()) {
            ctx.command = "disk-count";
            cmd_disk_count(ctx, parse_u64_list(dc_ns));
        } else if (hg->parsed()) {
            ctx.command = "histogram";
            cmd_histogram(ctx, h_kind, h_n, h_backend, h_cache);
        } else if (en->parsed()) {
            ctx.command = "energy";
            cmd_energy(ctx, e_kind, e_n, e_backend, e_cache);
        } else if (mc->parsed()) {
            ctx.command = "model-compare";
            cmd_model_compare(ctx, mc_n, mc_cache);
        } else if (l1->parsed()) {
            ctx.command = "verify-lemma1";
            cmd_verify_lemma1(ctx, l1_profile, l1_alpha, l1_slow, l1_beta,
                              parse_u64_list(l1_ns), parse_u64_list(l1_ks));
        } else if (l2->parsed()) {
            ctx.command = "verify-lemma2";
            cmd_verify_lemma2(ctx, l2_limit, parse_u64_list(l2_cps));
        } else if (co->parsed()) {
            ctx.command = "constants";
            cmd_constants(ctx);
        } else if (bd->parsed()) {
            ctx.command = "breakdown";
            cmd_breakdown(ctx, bd_n, bd_exact);
        } else if (ad->parsed()) {
            ctx.command = "adjudicate";
            cmd_adjudicate(ctx, parse_u64_list(ad_ns), parse_u64_list(ad_remark),
                           ad_breakdown);
        } else if (ca->parsed()) {
            ctx.command = "cache";
            cmd_cache(ctx, cache_action);
        }
        ctx.write_manifest();
        return 0;
    } catch (const capacity_error& e) {
        std::cerr << "E2: " << e.what() << '\n';
        return 2;
    } catch (const overflow_error& e) {
        std::cerr << "E2: " << e.what() << '\n';
        return 2;
    } catch (const convergence_error& e) {
        std::cerr << "E3: " << e.what() << " (achieved " << e.achieved_error << ")\n";
        return 3;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "E1: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "E1: " << e.what() << '\n';
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "E1: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "E1: " << e.what() << '\n';
        return 1;
    }
}
