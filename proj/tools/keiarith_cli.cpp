// Command-line front end: kei inspection, braid-closure colorings, arithmetic
// coloring invariants, class groups, and the summatory verification reports.
//
// Output is JSON on stdout unless --out is given; errors go to stderr as JSON
// with exit codes 2 (bad input), 3 (budget), 4 (unsupported kei expression).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "keiarith/braid.hpp"
#include "keiarith/stats.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using nlohmann::ordered_json;
using namespace keiarith;

namespace {

// reals are reported at 10 significant digits, bit-stable across runs
double round10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::strtod(buf, nullptr);
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

struct OutputSink {
    std::string path;    // empty -> stdout
    std::string format;  // "json" or "csv"

    std::string resolved_format() const {
        if (!format.empty()) return format;
        if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") return "csv";
        return "json";
    }
    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (!text.empty() && text.back() != '\n') std::cout << '\n';
            return;
        }
        std::ofstream out(path, std::ios::trunc | std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file " + path);
        out << text;
    }
    void emit(const ordered_json& j, const std::string& csv) const {
        if (resolved_format() == "csv" && !csv.empty())
            write(csv);
        else
            write(j.dump(2));
    }
};

struct GlobalConfig {
    int threads = 0;
    std::string out;
    std::string format;
    std::string cache_path;
    long long state_budget = 10'000'000;
    long long disc_budget = 20'000'000;
    long long sieve_budget = 50'000'000;
    long long euler_truncation = 1'000'000;
};

// the summatory machinery is exercised with small representative moduli
void require_cli_modulus(long long s) {
    if (s < 1 || s > 210 || !is_squarefree_u64(s))
        throw std::invalid_argument("coprimality modulus must be squarefree and at most 210");
}

std::vector<long long> parse_grid(const std::string& text) {
    std::vector<long long> grid;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size() || v < 1 || v > 9e18 || v != std::floor(v))
            throw std::invalid_argument("bad grid value: " + tok);
        grid.push_back(static_cast<long long>(v));
    }
    if (grid.empty()) throw std::invalid_argument("empty grid");
    return grid;
}

ordered_json table_json(const KeiTable& k) {
    ordered_json rows = ordered_json::array();
    for (int x = 0; x < k.size(); ++x) {
        ordered_json row = ordered_json::array();
        for (int y = 0; y < k.size(); ++y) row.push_back(k.apply(x, y));
        rows.push_back(std::move(row));
    }
    return ordered_json{{"size", k.size()}, {"op", std::move(rows)}};
}

std::string read_table_source(const std::string& file) {
    if (file.empty() || file == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot read table file " + file);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// --- subcommand payloads -------------------------------------------------

int run_kei_check(const GlobalConfig& g, const std::string& file, const std::string& expr_text) {
    OutputSink sink{g.out, g.format};
    KeiTable table = expr_text.empty() ? KeiTable::from_json(read_table_source(file))
                                       : KeiExpr::parse(expr_text).realize();
    auto violations = table.axiom_violations();
    ordered_json j;
    j["ok"] = violations.empty();
    ordered_json vs = ordered_json::array();
    for (const auto& v : violations) {
        ordered_json witness = ordered_json::array();
        for (int w : v.witness)
            if (w >= 0) witness.push_back(w);
        vs.push_back(ordered_json{{"axiom", v.axiom}, {"witness", std::move(witness)}});
    }
    j["violations"] = std::move(vs);
    sink.emit(j, "");
    return violations.empty() ? 0 : 1;
}

std::string kei_name(const KeiTable& k, int index) {
    if (k.size() <= 8) {
        if (is_isomorphic(k, KeiTable::trivial(k.size()))) return "T" + std::to_string(k.size());
        if (k.size() == 3) {
            if (is_isomorphic(k, KeiTable::joyce())) return "J";
            if (is_isomorphic(k, KeiTable::dihedral(3))) return "R3";
        }
    }
    return "K" + std::to_string(k.size()) + "_" + std::to_string(index);
}

int run_kei_enumerate(const GlobalConfig& g, int size) {
    OutputSink sink{g.out, g.format};
    auto keis = enumerate_keis(size);
    ordered_json list = ordered_json::array();
    int index = 0;
    for (const auto& k : keis) {
        ordered_json entry;
        entry["name"] = kei_name(k, index++);
        entry["table"] = table_json(k);
        list.push_back(std::move(entry));
    }
    ordered_json j{{"size", size}, {"count", keis.size()}, {"keis", std::move(list)}};
    sink.emit(j, "");
    return 0;
}

int run_kei_info(const GlobalConfig& g, const std::string& expr_text) {
    OutputSink sink{g.out, g.format};
    KeiExpr expr = KeiExpr::parse(expr_text);
    KeiTable k = expr.realize();
    ordered_json j;
    j["kei"] = expr.str();
    j["size"] = k.size();
    j["is_kei"] = k.is_kei();
    j["inner_order"] = inner_group(k).order();
    ordered_json orbit_list = ordered_json::array();
    for (const auto& orbit : orbits(k)) orbit_list.push_back(orbit);
    j["orbits"] = std::move(orbit_list);
    if (k.size() <= 16) {
        j["sub_kei_count"] = sub_keis(k).size();
        j["hilbert_degree"] = hilbert_degree(k);
    }
    sink.emit(j, "");
    return 0;
}

int run_braid_color(const GlobalConfig& g, const std::string& expr_text, int strands,
                    const std::string& word_text) {
    OutputSink sink{g.out, g.format};
    KeiExpr expr = KeiExpr::parse(expr_text);
    BraidWord word = BraidWord::parse(strands, word_text);
    long long value = closure_coloring_count(expr.realize(), word, g.state_budget);
    ordered_json j{{"kei", expr.str()},
                   {"strands", strands},
                   {"word", word.str()},
                   {"components", closure_components(word)},
                   {"value", value}};
    sink.emit(j, "");
    return 0;
}

int run_braid_avg(const GlobalConfig& g, const std::string& expr_text, int strands) {
    OutputSink sink{g.out, g.format};
    KeiExpr expr = KeiExpr::parse(expr_text);
    long long value = haar_average_colorings(expr.realize(), strands, g.state_budget);
    ordered_json j{{"kei", expr.str()}, {"strands", strands}, {"value", value}};
    long long expected = 0;
    if (polynomial_expected(expr, strands, &expected)) {
        j["polynomial_expected"] = expected;
        j["match"] = expected == value;
    } else {
        j["polynomial_expected"] = nullptr;
        j["match"] = nullptr;
    }
    sink.emit(j, "");
    return 0;
}

int run_col(const GlobalConfig& g, const std::string& expr_text, long long n, long long upto,
            long long s) {
    OutputSink sink{g.out, g.format};
    KeiExpr expr = KeiExpr::parse(expr_text);
    std::optional<ClassGroupCache> cache;
    if (!g.cache_path.empty()) cache = ClassGroupCache::load(g.cache_path);
    ClassGroupOptions cg;
    cg.disc_budget = g.disc_budget;

    if (upto == 0) {
        ColoringEvaluator eval(nullptr, cache ? &*cache : nullptr, cg);
        long long value = eval.col(expr, n);
        if (cache) cache->save(g.cache_path);
        sink.emit(ordered_json{{"kei", expr.str()}, {"n", n}, {"col", value}}, "");
        return 0;
    }

    if (s < 1 || !is_squarefree_u64(s)) throw std::invalid_argument("coprimality modulus must be squarefree");
    long long sieve_need = classify_expr(expr).r3 > 0 ? 4 * upto / 3 + 2 : upto;
    SieveTables sieve = build_sieve(sieve_need, g.sieve_budget);
    ColoringEvaluator eval(&sieve, cache ? &*cache : nullptr, cg);
    std::vector<long long> s_primes = factor_u64(s);

    std::string csv = "n,col\n";
    ordered_json rows = ordered_json::array();
    const bool want_csv = sink.resolved_format() == "csv";
    for (long long m = 1; m <= upto; ++m) {
        if (!sieve.squarefree(m)) continue;
        bool coprime = true;
        for (long long p : s_primes) coprime &= m % p != 0;
        if (!coprime) continue;
        long long value = eval.col(expr, m);
        if (want_csv)
            csv += std::to_string(m) + "," + std::to_string(value) + "\n";
        else
            rows.push_back(ordered_json{{"n", m}, {"col", value}});
    }
    if (cache) cache->save(g.cache_path);
    ordered_json j{{"kei", expr.str()}, {"upto", upto}, {"coprime", s}, {"values", std::move(rows)}};
    sink.emit(j, csv);
    return 0;
}

StatsOptions make_stats_options(const GlobalConfig& g, std::optional<ClassGroupCache>& cache) {
    StatsOptions opts;
    opts.sieve_budget = g.sieve_budget;
    opts.cg.disc_budget = g.disc_budget;
    opts.euler_truncation = g.euler_truncation;
    if (!g.cache_path.empty()) {
        cache = ClassGroupCache::load(g.cache_path);
        opts.cache = &*cache;
    }
    return opts;
}

ordered_json summatory_points_json(const SummatoryReport& rep) {
    ordered_json points = ordered_json::array();
    for (const auto& pt : rep.points) {
        ordered_json p;
        p["X"] = pt.X;
        p["N"] = pt.N;
        p["squarefree_count"] = pt.sq_count;
        p["E"] = round10(static_cast<double>(pt.N) / static_cast<double>(pt.sq_count));
        p["ratio"] = round10(pt.ratio);
        if (pt.h3_sum >= 0) p["h3_sum"] = pt.h3_sum;
        points.push_back(std::move(p));
    }
    return points;
}

std::string summatory_points_csv(const SummatoryReport& rep) {
    std::string csv = "X,N,E,ratio\n";
    for (const auto& pt : rep.points) {
        double E = static_cast<double>(pt.N) / static_cast<double>(pt.sq_count);
        csv += std::to_string(pt.X) + "," + std::to_string(pt.N) + "," + format_real(E) + "," +
               format_real(pt.ratio) + "\n";
    }
    return csv;
}

int run_avg(const GlobalConfig& g, const std::string& expr_text, long long s,
            const std::string& grid_text) {
    require_cli_modulus(s);
    OutputSink sink{g.out, g.format};
    KeiExpr expr = KeiExpr::parse(expr_text);
    std::optional<ClassGroupCache> cache;
    StatsOptions opts = make_stats_options(g, cache);
    SummatoryReport rep = summatory(expr, s, parse_grid(grid_text), opts);
    if (cache) cache->save(g.cache_path);
    ordered_json j{{"kei", rep.kei},
                   {"s", rep.s},
                   {"beta", rep.beta},
                   {"gamma_s", round10(rep.gamma)},
                   {"points", summatory_points_json(rep)}};
    sink.emit(j, summatory_points_csv(rep));
    return 0;
}

int run_verify(const GlobalConfig& g, const std::string& expr_text, long long s,
               const std::string& grid_text) {
    require_cli_modulus(s);
    OutputSink sink{g.out, g.format};
    KeiExpr expr = KeiExpr::parse(expr_text);
    std::optional<ClassGroupCache> cache;
    StatsOptions opts = make_stats_options(g, cache);
    VerifyReport rep = verify_generic_type(expr, s, parse_grid(grid_text), opts);
    if (cache) cache->save(g.cache_path);
    ordered_json j;
    j["kei"] = rep.base.kei;
    j["s"] = rep.base.s;
    j["beta"] = rep.base.beta;
    j["gamma_s"] = round10(rep.base.gamma);
    if (rep.target_known)
        j["c_target"] = round10(rep.c_target);
    else
        j["c_target"] = "unknown";
    j["points"] = summatory_points_json(rep.base);
    j["fitted"] = round10(rep.fitted);
    j["fitted_target"] = round10(rep.fitted_target);
    j["tolerance"] = rep.tolerance;
    j["verdict"] = rep.verdict;
    sink.emit(j, summatory_points_csv(rep.base));
    return 0;
}

int run_charsum(const GlobalConfig& g, long long s, const std::string& grid_text) {
    require_cli_modulus(s);
    OutputSink sink{g.out, g.format};
    std::optional<ClassGroupCache> cache;
    StatsOptions opts = make_stats_options(g, cache);
    auto points = bicharacter_sum_T(s, parse_grid(grid_text), opts);
    ordered_json list = ordered_json::array();
    std::string csv = "X,T,ratio\n";
    for (const auto& pt : points) {
        list.push_back(ordered_json{{"X", pt.X}, {"T", pt.T}, {"ratio", round10(pt.ratio)}});
        csv += std::to_string(pt.X) + "," + std::to_string(pt.T) + "," + format_real(pt.ratio) + "\n";
    }
    ordered_json j{{"s", s}, {"points", std::move(list)}};
    sink.emit(j, csv);
    return 0;
}

ordered_json classgroup_json(long long disc, const FormClassGroup& cl) {
    ordered_json j;
    j["disc"] = disc;
    j["fundamental"] = cl.fundamental;
    j["h"] = cl.h();
    j["t3"] = cl.three_torsion;
    if (cl.fundamental)
        j["h3"] = (cl.three_torsion - 1) / 2;
    else
        j["h3"] = nullptr;
    return j;
}

int run_classgroup(const GlobalConfig& g, long long disc, long long n, long long upto, long long s,
                   bool allow_nonfundamental) {
    OutputSink sink{g.out, g.format};
    ClassGroupOptions cg;
    cg.disc_budget = g.disc_budget;
    cg.allow_nonfundamental = allow_nonfundamental;
    std::optional<ClassGroupCache> cache;
    if (!g.cache_path.empty()) cache = ClassGroupCache::load(g.cache_path);

    if (upto > 0) {
        if (s < 1 || !is_squarefree_u64(s))
            throw std::invalid_argument("coprimality modulus must be squarefree");
        SieveTables sieve = build_sieve(4 * upto / 3 + 2, g.sieve_budget);
        std::vector<long long> s_primes = factor_u64(s);
        std::string csv = "disc,h,t3,h3\n";
        ordered_json rows = ordered_json::array();
        const bool want_csv = sink.resolved_format() == "csv";
        for (long long m = 2; m <= upto; ++m) {
            if (!sieve.squarefree(m)) continue;
            bool coprime = true;
            for (long long p : s_primes) coprime &= m % p != 0;
            if (!coprime) continue;
            long long d = fundamental_discriminant(m);
            long long h, t3;
            if (!cache || !cache->lookup(d, &h, &t3)) {
                FormClassGroup cl = class_group(d, cg, &sieve);
                h = cl.h();
                t3 = cl.three_torsion;
                if (cache) cache->store(d, h, t3);
            }
            if (want_csv)
                csv += std::to_string(d) + "," + std::to_string(h) + "," + std::to_string(t3) + "," +
                       std::to_string((t3 - 1) / 2) + "\n";
            else
                rows.push_back(ordered_json{{"disc", d}, {"h", h}, {"t3", t3}, {"h3", (t3 - 1) / 2}});
        }
        if (cache) cache->save(g.cache_path);
        sink.emit(ordered_json{{"upto", upto}, {"coprime", s}, {"rows", std::move(rows)}}, csv);
        return 0;
    }

    if (n > 0) disc = fundamental_discriminant(n);
    if (disc == 0) throw std::invalid_argument("one of --disc, --n, --upto is required");
    FormClassGroup cl = class_group(disc, cg);
    if (cache) {
        cache->store(disc, cl.h(), cl.three_torsion);
        cache->save(g.cache_path);
    }
    ordered_json j = classgroup_json(disc, cl);
    std::string csv = "disc,h,t3,h3\n" + std::to_string(disc) + "," + std::to_string(cl.h()) + "," +
                      std::to_string(cl.three_torsion) + "," +
                      (cl.fundamental ? std::to_string((cl.three_torsion - 1) / 2) : std::string("")) +
                      "\n";
    sink.emit(j, csv);
    return 0;
}

int run_sieve(const GlobalConfig& g, long long limit) {
    OutputSink sink{g.out, g.format};
    SieveTables t = build_sieve(limit, g.sieve_budget);
    long long squarefree = 0, mertens = 0;
    for (long long m = 1; m <= limit; ++m) {
        squarefree += t.squarefree(m) ? 1 : 0;
        mertens += t.mu_of(m);
    }
    ordered_json j{{"limit", limit}, {"squarefree_count", squarefree}, {"mertens", mertens}};
    sink.emit(j, "");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kei-coloring invariants of squarefree integers and braid closures"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file; flags override it");

    GlobalConfig g;
    app.add_option("--threads", g.threads, "worker threads (0 = hardware default)");
    app.add_option("--out", g.out, "write the report to this file instead of stdout");
    app.add_option("--format", g.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv", ""}));
    app.add_option("--cache", g.cache_path, "CSV cache of class-group data (disc,h,t3)");
    app.add_option("--state-budget", g.state_budget, "max coloring states |K|^strands");
    app.add_option("--disc-budget", g.disc_budget, "max |discriminant| for class groups");
    app.add_option("--sieve-budget", g.sieve_budget, "max sieve length");
    app.add_option("--euler-trunc", g.euler_truncation, "Euler product truncation bound");

    // kei {check | enumerate | info}
    auto* kei_cmd = app.add_subcommand("kei", "finite kei tables");
    kei_cmd->require_subcommand(1);
    auto* kei_check = kei_cmd->add_subcommand("check", "validate a kei table");
    std::string check_file, check_expr;
    kei_check->add_option("--file", check_file, "table JSON file ('-' or empty reads stdin)");
    kei_check->add_option("--expr", check_expr, "check the realization of an expression instead");
    auto* kei_enum = kei_cmd->add_subcommand("enumerate", "all keis of a size up to isomorphism");
    int enum_size = 3;
    kei_enum->add_option("--size", enum_size, "number of elements")->required();
    auto* kei_info = kei_cmd->add_subcommand("info", "invariants of a kei expression");
    std::string info_expr;
    kei_info->add_option("--kei", info_expr, "kei expression, e.g. \"J+T(2)\"")->required();

    // braid {color | avg}
    auto* braid_cmd = app.add_subcommand("braid", "braid-closure colorings");
    braid_cmd->require_subcommand(1);
    auto* braid_color = braid_cmd->add_subcommand("color", "colorings of a braid closure");
    std::string bc_expr, bc_word;
    int bc_strands = 2;
    braid_color->add_option("--kei", bc_expr)->required();
    braid_color->add_option("--strands", bc_strands)->required();
    braid_color->add_option("--word", bc_word, "comma-separated signed generator indices");
    auto* braid_avg = braid_cmd->add_subcommand("avg", "Haar-average colorings over random braids");
    std::string ba_expr;
    int ba_strands = 2;
    braid_avg->add_option("--kei", ba_expr)->required();
    braid_avg->add_option("--strands", ba_strands)->required();

    // col
    auto* col_cmd = app.add_subcommand("col", "arithmetic coloring invariants");
    std::string col_expr;
    long long col_n = 0, col_upto = 0, col_s = 1;
    col_cmd->add_option("--kei", col_expr)->required();
    col_cmd->add_option("--n", col_n, "single squarefree argument");
    col_cmd->add_option("--upto", col_upto, "emit values for all squarefree n up to this bound");
    col_cmd->add_option("--coprime", col_s, "restrict to n coprime to this squarefree modulus");

    // avg / verify
    auto* avg_cmd = app.add_subcommand("avg", "summatory averages over a grid");
    std::string avg_expr, avg_grid;
    long long avg_s = 1;
    avg_cmd->add_option("--kei", avg_expr)->required();
    avg_cmd->add_option("--coprime", avg_s);
    avg_cmd->add_option("--grid", avg_grid, "comma list of X values, e.g. 1e4,1e5,1e6")->required();

    auto* verify_cmd = app.add_subcommand("verify", "summatory growth against the target constants");
    std::string verify_expr, verify_grid;
    long long verify_s = 1;
    verify_cmd->add_option("--kei", verify_expr)->required();
    verify_cmd->add_option("--coprime", verify_s);
    verify_cmd->add_option("--grid", verify_grid)->required();

    // charsum
    auto* charsum_cmd = app.add_subcommand("charsum", "Kronecker bi-character sums T_s(X)");
    std::string charsum_grid;
    long long charsum_s = 1;
    charsum_cmd->add_option("--coprime", charsum_s);
    charsum_cmd->add_option("--grid", charsum_grid)->required();

    // classgroup
    auto* cg_cmd = app.add_subcommand("classgroup", "form class groups and 3-torsion");
    long long cg_disc = 0, cg_n = 0, cg_upto = 0, cg_s = 1;
    bool cg_allow = false;
    cg_cmd->add_option("--disc", cg_disc, "discriminant");
    cg_cmd->add_option("--n", cg_n, "squarefree n > 1; uses its fundamental discriminant");
    cg_cmd->add_option("--upto", cg_upto, "rows for all squarefree 1 < n <= bound");
    cg_cmd->add_option("--coprime", cg_s);
    cg_cmd->add_flag("--allow-nonfundamental", cg_allow, "permit non-fundamental discriminants");

    // sieve
    auto* sieve_cmd = app.add_subcommand("sieve", "build the arithmetic tables");
    long long sieve_limit = 0;
    sieve_cmd->add_option("--limit", sieve_limit)->required();

    // let the global flags (--out, --format, ...) appear after a subcommand
    auto enable_fallthrough = [](auto&& self, CLI::App* cmd) -> void {
        for (CLI::App* sub : cmd->get_subcommands({})) {
            sub->fallthrough();
            self(self, sub);
        }
    };
    enable_fallthrough(enable_fallthrough, &app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        ordered_json err{{"error", {{"kind", "parse"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

#ifdef _OPENMP
    if (g.threads > 0) omp_set_num_threads(g.threads);
#endif

    try {
        if (kei_check->parsed()) return run_kei_check(g, check_file, check_expr);
        if (kei_enum->parsed()) return run_kei_enumerate(g, enum_size);
        if (kei_info->parsed()) return run_kei_info(g, info_expr);
        if (braid_color->parsed()) return run_braid_color(g, bc_expr, bc_strands, bc_word);
        if (braid_avg->parsed()) return run_braid_avg(g, ba_expr, ba_strands);
        if (col_cmd->parsed()) return run_col(g, col_expr, col_n, col_upto, col_s);
        if (avg_cmd->parsed()) return run_avg(g, avg_expr, avg_s, avg_grid);
        if (verify_cmd->parsed()) return run_verify(g, verify_expr, verify_s, verify_grid);
        if (charsum_cmd->parsed()) return run_charsum(g, charsum_s, charsum_grid);
        if (cg_cmd->parsed()) return run_classgroup(g, cg_disc, cg_n, cg_upto, cg_s, cg_allow);
        if (sieve_cmd->parsed()) return run_sieve(g, sieve_limit);
        throw std::invalid_argument("no subcommand given");
    } catch (const unsupported_kei_error& e) {
        ordered_json err{{"error", {{"kind", "unsupported-kei"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 4;
    } catch (const budget_error& e) {
        ordered_json err{{"error", {{"kind", "budget"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        ordered_json err{{"error", {{"kind", "parse"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        ordered_json err{{"error", {{"kind", "internal"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
