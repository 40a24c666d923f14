// Command-line front end: construct packing designs, certify them, emit
// density tables and machine-readable reports, and re-verify stored designs.
//
// Exit codes: 0 ok, 1 verification failure, 2 bad parameters, 3 resource
// guard exceeded. XPOLY_THREADS sets the certification worker count.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "xpoly/report.hpp"

namespace {

using namespace xpoly;

int worker_count() {
    if (const char* env = std::getenv("XPOLY_THREADS")) {
        int v = std::atoi(env);
        return std::clamp(v, 1, 64);
    }
    return 1;
}

void emit(const ordered_json& j, const std::string& out_file) {
    if (out_file.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out_file);
    if (!f)
        throw std::invalid_argument("cannot open output file: " + out_file);
    f << j.dump(2) << "\n";
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

struct ConstructArgs {
    std::string family;
    int n = 0;
    int t = -1;
    bool certify_flag = false;
    int bound = -1;
    bool exact = false;
    std::string out;
};

int run_construct(const ConstructArgs& a) {
    const auto start = std::chrono::steady_clock::now();
    const auto fam = family_from_string(a.family);
    if (!fam)
        throw std::invalid_argument("unknown family '" + a.family +
                                    "' (expected rs, sidon or sidon-discrete)");
    if (a.n < 1)
        throw std::invalid_argument("-n must be >= 1");
    int t = a.t;
    if (t < 0) {
        switch (*fam) {
        case Family::rs: t = optimal_t_rs(a.n); break;
        case Family::sidon: t = optimal_t_sidon(a.n); break;
        case Family::sidon_discrete:
            throw std::invalid_argument("sidon-discrete requires an explicit -t (the radius)");
        }
    }

    PackingDesign design = [&] {
        switch (*fam) {
        case Family::rs: return rs_lattice(a.n, t, next_prime(a.n));
        case Family::sidon: return sidon_lattice(a.n, t, sidon_set_for(a.n, t - 1));
        default: return sidon_discrete_lattice(a.n, t, sidon_set_for(a.n, t));
        }
    }();

    std::optional<int> bound;
    if (a.bound >= 1)
        bound = a.bound;
    CertifiedDesign cd = certify(std::move(design), a.certify_flag, bound, worker_count());

    ordered_json inputs;
    inputs["family"] = a.family;
    inputs["n"] = a.n;
    inputs["t"] = t;
    inputs["certify"] = a.certify_flag;
    if (bound)
        inputs["bound"] = *bound;
    inputs["exact"] = a.exact;
    ordered_json env = make_envelope("construct", std::move(inputs));
    env["design"] = design_json(cd);
    if (a.exact) {
        const auto n = static_cast<std::uint64_t>(cd.design.n);
        BigRational exact = cd.design.family == Family::sidon_discrete
                                ? discrete_density_exact(n, cd.design.t, cd.basis.det())
                                : continuous_density_exact(n, cd.design.t, cd.basis.det());
        env["design"]["density_exact"] = exact.str();
    }
    env["timing_ms"] = elapsed_ms(start);
    emit(env, a.out);
    return 0;
}

struct SidonArgs {
    int n = 0;
    int h = -1;
    std::string out;
};

int run_sidon(const SidonArgs& a) {
    const auto start = std::chrono::steady_clock::now();
    if (a.n < 1)
        throw std::invalid_argument("-n must be >= 1");
    if (a.h < 0)
        throw std::invalid_argument("-h (the Sidon order) is required");
    SidonSet set = sidon_set_for(a.n, a.h);
    SidonCheck check = verify_sidon(set, a.h);

    ordered_json inputs;
    inputs["n"] = a.n;
    inputs["h"] = a.h;
    ordered_json env = make_envelope("sidon", std::move(inputs));
    ordered_json sj;
    sj["n"] = a.n;
    sj["order"] = a.h;
    sj["group"] = set.group;
    sj["elements"] = set.elements;
    sj["verified"] = check.ok;
    if (a.h >= 2) {
        const PrimePower q = next_prime_power(std::max<std::uint64_t>(a.n, 2));
        const Factorization fac = factorize(q.value);
        const Field field(fac.factors[0].first,
                          static_cast<unsigned>(fac.factors[0].second) * a.h);
        sj["q"] = q.value;
        ordered_json fj;
        fj["p"] = field.characteristic();
        fj["m"] = field.degree();
        fj["modulus"] = field.modulus();
        sj["field"] = std::move(fj);
    }
    env["set"] = std::move(sj);
    env["timing_ms"] = elapsed_ms(start);
    emit(env, a.out);
    if (!check.ok) {
        std::cerr << "error: constructed set failed its own verification\n";
        return 1;
    }
    return 0;
}

struct TableArgs {
    std::uint64_t n_min = 0, n_max = 0;
    std::string families = "rush,rs,sidon";
    std::string format = "csv";
    bool exact = false;
    std::string out;
};

int run_density_table(const TableArgs& a) {
    const auto start = std::chrono::steady_clock::now();
    if (a.n_min < 1 || a.n_min > a.n_max)
        throw std::invalid_argument("need 1 <= n-min <= n-max");
    if (a.n_max > 100000)
        throw guard_error("density-table: n-max is capped at 10^5");
    if (a.format != "csv" && a.format != "json")
        throw std::invalid_argument("--format must be csv or json");
    bool want_rush = false, want_rs = false, want_sidon = false;
    {
        std::string item;
        std::stringstream ss(a.families);
        while (std::getline(ss, item, ',')) {
            if (item == "rush") want_rush = true;
            else if (item == "rs") want_rs = true;
            else if (item == "sidon") want_sidon = true;
            else if (!item.empty())
                throw std::invalid_argument("unknown family in --families: " + item);
        }
        if (!want_rush && !want_rs && !want_sidon)
            throw std::invalid_argument("--families selected nothing");
    }
    if (a.exact && a.n_max > kExactDensityMaxN)
        throw std::invalid_argument("--exact is limited to n-max <= 20");

    std::ostringstream csv;
    ordered_json rows = ordered_json::array();
    if (a.format == "csv") {
        csv << "n";
        if (want_rush) csv << ",rush_t,rush_log2_density,rush_conforming";
        if (want_rs) csv << ",rs_t,rs_p,rs_log2_density";
        if (want_sidon) csv << ",sidon_t,sidon_q,sidon_log2_density";
        if (want_rush && want_rs) csv << ",rs_vs_rush_log2";
        if (want_rush && want_sidon) csv << ",sidon_vs_rush_log2";
        if (a.exact) {
            if (want_rush) csv << ",rush_density_exact";
            if (want_rs) csv << ",rs_density_exact";
            if (want_sidon) csv << ",sidon_density_exact";
        }
        csv << "\n";
    }

    for (std::uint64_t n = a.n_min; n <= a.n_max; ++n) {
        RushDensity rush{};
        RsDensity rs{};
        SidonDensity sidon{};
        if (want_rush) rush = rush_log2_density(n);
        if (want_rs) rs = rs_log2_density(n);
        if (want_sidon) sidon = sidon_bound_log2_density(n);
        if (a.format == "csv") {
            csv << n;
            if (want_rush)
                csv << "," << rush.t << "," << fmt_double(rush.log2_density) << ","
                    << (rush.conforming ? 1 : 0);
            if (want_rs)
                csv << "," << rs.t << "," << rs.p << "," << fmt_double(rs.log2_density);
            if (want_sidon)
                csv << "," << sidon.t << "," << sidon.q << "," << fmt_double(sidon.log2_density);
            if (want_rush && want_rs)
                csv << "," << fmt_double(rs.log2_density - rush.log2_density);
            if (want_rush && want_sidon)
                csv << "," << fmt_double(sidon.log2_density - rush.log2_density);
            if (a.exact) {
                if (want_rush)
                    csv << "," << rush_density_exact(n, rush.t).str();
                if (want_rs)
                    csv << "," << rs_density_exact(n, rs.t, rs.p).str();
                if (want_sidon) {
                    BigInt num = 1;
                    for (std::uint64_t i = 0; i + 1 < n; ++i)
                        num *= 2 * sidon.t;
                    BigInt den = factorial_big(n);
                    for (int i = 0; i + 1 < sidon.t; ++i)
                        den *= sidon.q;
                    csv << "," << BigRational(num, den).str();
                }
            }
            csv << "\n";
        } else {
            ordered_json r;
            r["n"] = n;
            if (want_rush) {
                r["rush"] = {{"t", rush.t},
                             {"log2_density", rush.log2_density},
                             {"conforming", rush.conforming}};
            }
            if (want_rs)
                r["rs"] = {{"t", rs.t}, {"p", rs.p}, {"log2_density", rs.log2_density}};
            if (want_sidon)
                r["sidon"] = {{"t", sidon.t}, {"q", sidon.q}, {"log2_density", sidon.log2_density}};
            if (want_rush && want_rs)
                r["rs_vs_rush_log2"] = rs.log2_density - rush.log2_density;
            if (want_rush && want_sidon)
                r["sidon_vs_rush_log2"] = sidon.log2_density - rush.log2_density;
            rows.push_back(std::move(r));
        }
    }

    if (a.format == "csv") {
        if (a.out.empty()) {
            std::cout << csv.str();
        } else {
            std::ofstream f(a.out);
            if (!f)
                throw std::invalid_argument("cannot open output file: " + a.out);
            f << csv.str();
        }
    } else {
        ordered_json inputs;
        inputs["n_min"] = a.n_min;
        inputs["n_max"] = a.n_max;
        inputs["families"] = a.families;
        ordered_json env = make_envelope("density-table", std::move(inputs));
        env["table"] = std::move(rows);
        env["timing_ms"] = elapsed_ms(start);
        emit(env, a.out);
    }
    return 0;
}

int run_verify(const std::string& file) {
    std::ifstream f(file);
    if (!f)
        throw std::invalid_argument("cannot open design file: " + file);
    ordered_json j;
    try {
        f >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("design file is not valid JSON: ") + e.what());
    }
    const auto violations = verify_design(j, worker_count());
    if (violations.empty()) {
        std::cout << "OK\n";
        return 0;
    }
    for (const auto& v : violations)
        std::cout << "violation: " << v << "\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lattice packings of cross-polytopes from congruence constructions"};
    app.set_help_flag("--help", "print help and exit"); // -h is the Sidon order flag
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "build a packing design");
    construct->add_option("family", ca.family, "rs | sidon | sidon-discrete")->required();
    construct->add_option("-n", ca.n, "dimension")->required();
    construct->add_option("-t", ca.t, "radius (defaults to the family's optimal t)");
    construct->add_flag("--certify", ca.certify_flag, "exhaustively certify the minimum distance");
    construct->add_option("--bound", ca.bound, "certification norm bound (default: the guarantee)");
    construct->add_flag("--exact", ca.exact, "include the exact rational density (n <= 20)");
    construct->add_option("--out", ca.out, "write the report to a file instead of stdout");

    SidonArgs sa;
    auto* sidon = app.add_subcommand("sidon", "construct a Sidon set");
    sidon->add_option("-n", sa.n, "set size")->required();
    sidon->add_option("-h", sa.h, "Sidon order")->required();
    sidon->add_option("--out", sa.out, "write the report to a file instead of stdout");

    TableArgs ta;
    auto* table = app.add_subcommand("density-table", "tabulate packing densities");
    table->add_option("--n-min", ta.n_min, "first dimension")->required();
    table->add_option("--n-max", ta.n_max, "last dimension")->required();
    table->add_option("--families", ta.families, "comma list of rush,rs,sidon (default all)");
    table->add_option("--format", ta.format, "csv | json (default csv)");
    table->add_flag("--exact", ta.exact, "append exact rational density columns (n <= 20)");
    table->add_option("--out", ta.out, "write the table to a file instead of stdout");

    std::string verify_file;
    auto* verify = app.add_subcommand("verify", "re-check a stored design");
    verify->add_option("file", verify_file, "design report (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (construct->parsed())
            return run_construct(ca);
        if (sidon->parsed())
            return run_sidon(sa);
        if (table->parsed())
            return run_density_table(ta);
        if (verify->parsed())
            return run_verify(verify_file);
    } catch (const xpoly::guard_error& e) {
        std::cerr << "error (resource guard): " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
