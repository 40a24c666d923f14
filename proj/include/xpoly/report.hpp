#pragma once

// Machine-readable design reports: certification wrapper, the stable JSON
// schema used by the CLI, and the re-verification of stored designs.
//
// Schema (design object, field order fixed):
//   family, n, t, rows [{coeffs, modulus}], basis [[int]], det (decimal
//   string), det_expected (decimal string), residue_map_surjective,
//   guaranteed_min_dist, certified_min_dist? | certified_min_dist_exceeds?,
//   witness?, log2_density, vs_rush_log2
// Big integers travel as decimal strings; everything except the envelope's
// timing field is deterministic for identical inputs.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "xpoly/constructions.hpp"
#include "xpoly/density.hpp"
#include "xpoly/lattice.hpp"

namespace xpoly {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

struct CertifiedDesign {
    PackingDesign design;
    LatticeBasis basis;
    BigInt det_expected;
    bool surjective = true;
    std::optional<int> certified_min_dist;
    std::optional<int> certified_exceeds;
    std::vector<long long> witness;
    double log2_density = 0;
    double vs_rush_log2 = 0;
};

/// Extract the basis, flag the determinant against the family rule, run the
/// distance certifier when asked, and evaluate the density from the actual
/// determinant.
inline CertifiedDesign certify(PackingDesign design, bool run_distance = false,
                               std::optional<int> bound = std::nullopt, int threads = 1) {
    LatticeBasis basis = basis_from_congruences(design.system);
    CertifiedDesign out{std::move(design), std::move(basis), 0, true,
                        std::nullopt, std::nullopt, {}, 0, 0};
    out.det_expected = expected_determinant(out.design);
    out.surjective = out.basis.det() == out.det_expected;
    if (run_distance) {
        const int b = bound.value_or(out.design.guaranteed_min_dist);
        MinDistanceResult res = min_l1_distance(out.design.system, b, threads);
        if (res.distance) {
            out.certified_min_dist = res.distance;
            out.witness = res.witness;
        } else {
            out.certified_exceeds = b;
        }
    }
    const auto n = static_cast<std::uint64_t>(out.design.n);
    if (out.design.family == Family::sidon_discrete)
        out.log2_density = discrete_log2_density_from_det(n, out.design.t, out.basis.det());
    else
        out.log2_density = continuous_log2_density(n, out.design.t, out.basis.det());
    out.vs_rush_log2 = out.log2_density - rush_log2_density(n).log2_density;
    return out;
}

inline ordered_json design_json(const CertifiedDesign& cd) {
    ordered_json j;
    j["family"] = to_string(cd.design.family);
    j["n"] = cd.design.n;
    j["t"] = cd.design.t;
    ordered_json rows = ordered_json::array();
    for (const auto& row : cd.design.system.rows()) {
        ordered_json r;
        r["coeffs"] = row.coeffs;
        r["modulus"] = row.modulus;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    ordered_json basis = ordered_json::array();
    for (const auto& row : cd.basis.rows()) {
        std::vector<long long> r;
        r.reserve(row.size());
        for (const auto& v : row)
            r.push_back(v.convert_to<long long>());
        basis.push_back(r);
    }
    j["basis"] = std::move(basis);
    j["det"] = cd.basis.det().str();
    j["det_expected"] = cd.det_expected.str();
    j["residue_map_surjective"] = cd.surjective;
    j["guaranteed_min_dist"] = cd.design.guaranteed_min_dist;
    if (cd.certified_min_dist) {
        j["certified_min_dist"] = *cd.certified_min_dist;
        j["witness"] = cd.witness;
    } else if (cd.certified_exceeds) {
        j["certified_min_dist_exceeds"] = *cd.certified_exceeds;
    }
    j["log2_density"] = cd.log2_density;
    j["vs_rush_log2"] = cd.vs_rush_log2;
    return j;
}

namespace detail {

inline bool close(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

inline void require_fields(const ordered_json& j) {
    static const char* keys[] = {"family", "n", "t", "rows", "basis", "det", "det_expected",
                                 "residue_map_surjective", "guaranteed_min_dist",
                                 "log2_density", "vs_rush_log2"};
    for (const char* k : keys)
        if (!j.contains(k))
            throw std::invalid_argument(std::string("design: missing field '") + k + "'");
    if (!j.at("family").is_string() || !j.at("n").is_number_integer() ||
        !j.at("t").is_number_integer() || !j.at("rows").is_array() ||
        !j.at("basis").is_array() || !j.at("det").is_string() ||
        !j.at("det_expected").is_string() || !j.at("residue_map_surjective").is_boolean() ||
        !j.at("guaranteed_min_dist").is_number_integer() || !j.at("log2_density").is_number() ||
        !j.at("vs_rush_log2").is_number())
        throw std::invalid_argument("design: a field has the wrong JSON type");
}

} // namespace detail

/// Re-check a stored design against everything that can be recomputed:
/// canonical row shape for its family, Sidon property, HNF basis and
/// determinants, certified distance and witness, densities. Returns the list
/// of violated invariants (empty when the design verifies). Malformed input
/// (missing fields, wrong JSON types) throws std::invalid_argument instead.
inline std::vector<std::string> verify_design(const ordered_json& root, int threads = 1) {
    const ordered_json& j = root.is_object() && root.contains("design") ? root.at("design") : root;
    if (!j.is_object())
        throw std::invalid_argument("design: not a JSON object");
    detail::require_fields(j);

    std::vector<std::string> bad;
    const auto fam = family_from_string(j.at("family").get<std::string>());
    if (!fam) {
        bad.push_back("family: unrecognized family name");
        return bad;
    }
    const int n = j.at("n").get<int>();
    const int t = j.at("t").get<int>();

    // raw stored rows (compared unreduced against the canonical construction)
    std::vector<CongruenceRow> stored_rows;
    for (const auto& rj : j.at("rows")) {
        if (!rj.is_object() || !rj.contains("coeffs") || !rj.contains("modulus"))
            throw std::invalid_argument("design: malformed row entry");
        CongruenceRow r;
        r.modulus = rj.at("modulus").get<std::uint64_t>();
        for (const auto& c : rj.at("coeffs"))
            r.coeffs.push_back(c.get<std::uint64_t>());
        stored_rows.push_back(std::move(r));
    }

    std::optional<PackingDesign> rebuilt;
    try {
        if (*fam == Family::rs) {
            if (stored_rows.empty())
                throw std::invalid_argument("no rows");
            rebuilt = rs_lattice(n, t, stored_rows[0].modulus);
        } else {
            if (stored_rows.empty())
                throw std::invalid_argument("no rows");
            SidonSet b;
            b.order_h = *fam == Family::sidon ? t - 1 : t;
            for (std::size_t k = 1; k < stored_rows.size(); ++k)
                b.group.push_back(stored_rows[k].modulus);
            for (int i = 0; i < n; ++i) {
                std::vector<std::uint64_t> coords;
                for (std::size_t k = 1; k < stored_rows.size(); ++k) {
                    if (static_cast<int>(stored_rows[k].coeffs.size()) != n)
                        throw std::invalid_argument("row arity mismatch");
                    coords.push_back(stored_rows[k].coeffs[i]);
                }
                b.elements.push_back(std::move(coords));
            }
            SidonCheck check = verify_sidon(b, b.order_h);
            if (!check.ok) {
                bad.push_back("sidon: the stored set is not a Sidon set of the required order");
                return bad;
            }
            rebuilt = *fam == Family::sidon ? sidon_lattice(n, t, b)
                                            : sidon_discrete_lattice(n, t, b);
        }
    } catch (const std::exception& e) {
        bad.push_back(std::string("construction: parameters do not form a valid design (") +
                      e.what() + ")");
        return bad;
    }

    // stored rows must equal the canonical construction bit for bit
    const auto& canon = rebuilt->system.rows();
    bool rows_match = canon.size() == stored_rows.size();
    for (std::size_t k = 0; rows_match && k < canon.size(); ++k)
        rows_match = canon[k].modulus == stored_rows[k].modulus &&
                     canon[k].coeffs == stored_rows[k].coeffs;
    if (!rows_match) {
        bad.push_back("rows: stored congruence rows are not the canonical rows of this family");
        return bad;
    }
    if (rebuilt->guaranteed_min_dist != j.at("guaranteed_min_dist").get<int>())
        bad.push_back("guaranteed_min_dist: does not match the family rule");

    // basis, determinants, flag
    LatticeBasis recomputed = basis_from_congruences(rebuilt->system);
    try {
        std::vector<std::vector<BigInt>> stored_basis;
        for (const auto& rowj : j.at("basis")) {
            std::vector<BigInt> r;
            for (const auto& v : rowj)
                r.emplace_back(v.get<long long>());
            stored_basis.push_back(std::move(r));
        }
        if (stored_basis != recomputed.rows())
            bad.push_back("basis: stored basis is not the Hermite normal form of the rows");
    } catch (const std::exception&) {
        bad.push_back("basis: malformed basis matrix");
    }
    try {
        if (BigInt(j.at("det").get<std::string>()) != recomputed.det())
            bad.push_back("det: stored determinant does not match the basis");
        if (BigInt(j.at("det_expected").get<std::string>()) != expected_determinant(*rebuilt))
            bad.push_back("det_expected: does not match the family rule");
    } catch (const std::exception&) {
        bad.push_back("det: not a decimal integer");
    }
    const bool surjective = recomputed.det() == expected_determinant(*rebuilt);
    if (j.at("residue_map_surjective").get<bool>() != surjective)
        bad.push_back("residue_map_surjective: flag does not match the determinants");

    // certified distance: re-derive exactly, witness and all
    const bool has_cert = j.contains("certified_min_dist");
    const bool has_exceeds = j.contains("certified_min_dist_exceeds");
    if (has_cert && has_exceeds)
        bad.push_back("certified_min_dist: mutually exclusive with certified_min_dist_exceeds");
    else if (has_cert) {
        try {
            const int cd = j.at("certified_min_dist").get<int>();
            MinDistanceResult res = min_l1_distance(rebuilt->system, cd, threads);
            if (!res.distance || *res.distance != cd)
                bad.push_back("certified_min_dist: recomputed minimum distance differs");
            else if (j.contains("witness")) {
                std::vector<long long> w;
                for (const auto& v : j.at("witness"))
                    w.push_back(v.get<long long>());
                if (w != res.witness)
                    bad.push_back("witness: not the canonical minimal-norm witness");
            }
        } catch (const std::exception& e) {
            bad.push_back(std::string("certified_min_dist: cannot be re-checked (") + e.what() +
                          ")");
        }
    } else if (has_exceeds) {
        try {
            const int ce = j.at("certified_min_dist_exceeds").get<int>();
            MinDistanceResult res = min_l1_distance(rebuilt->system, ce, threads);
            if (res.distance)
                bad.push_back("certified_min_dist_exceeds: a shorter vector exists");
        } catch (const std::exception& e) {
            bad.push_back(std::string("certified_min_dist_exceeds: cannot be re-checked (") +
                          e.what() + ")");
        }
    }

    // densities from the actual determinant
    const auto un = static_cast<std::uint64_t>(n);
    const double density = *fam == Family::sidon_discrete
                               ? discrete_log2_density_from_det(un, t, recomputed.det())
                               : continuous_log2_density(un, t, recomputed.det());
    if (!detail::close(j.at("log2_density").get<double>(), density))
        bad.push_back("log2_density: does not match the recomputed density");
    if (!detail::close(j.at("vs_rush_log2").get<double>(),
                       density - rush_log2_density(un).log2_density))
        bad.push_back("vs_rush_log2: does not match the recomputed comparison");
    if (j.contains("density_exact")) {
        try {
            BigRational exact = *fam == Family::sidon_discrete
                                    ? discrete_density_exact(un, t, recomputed.det())
                                    : continuous_density_exact(un, t, recomputed.det());
            if (j.at("density_exact").get<std::string>() != exact.str())
                bad.push_back("density_exact: does not match the recomputed rational");
        } catch (const std::exception&) {
            bad.push_back("density_exact: cannot be re-checked");
        }
    }

    return bad;
}

inline ordered_json make_envelope(const std::string& command, ordered_json inputs) {
    ordered_json e;
    e["schema_version"] = kSchemaVersion;
    e["command"] = command;
    e["inputs"] = std::move(inputs);
    return e;
}

} // namespace xpoly
