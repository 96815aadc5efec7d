/*
 * Command implementations behind the ks3 binary.
 *
 * Each command builds a Report (config echo + result payload) and the
 * binary serializes it with emit_report. Map inputs are either a path to a
 * map file or a catalog reference "catalog:name(param)". The decompose
 * command reads an operator file {"d": 3, "matrix": 3×3 complex}.
 *
 * Key order in every payload is fixed and optional values are emitted as
 * null, so identical (input, config) pairs serialize byte-identically.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ks3/bloch.hpp"
#include "ks3/catalog.hpp"
#include "ks3/classify.hpp"
#include "ks3/error.hpp"
#include "ks3/gellmann.hpp"
#include "ks3/jsonw.hpp"
#include "ks3/ks.hpp"
#include "ks3/map.hpp"
#include "ks3/map_io.hpp"
#include "ks3/report.hpp"
#include "ks3/rng.hpp"

namespace ks3 {

struct RunConfig {
    std::uint64_t seed = 0;
    int budget = 200;
    double tol = 1e-9;
    std::string format = "json";  // json | csv
    std::string out_path;         // empty → stdout
    std::string input;            // map/operator path or catalog:name(...)
    std::string family;           // sweep: e.g. "mu=(a,a,a,a,b,b,b,b)"
    std::string a_range;          // sweep: "start:end:step"
    std::string b_range;
};

namespace detail {

inline Json real_matrix_json(const RealMatrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push(Json::of(m(r, c)));
        rows.push(std::move(row));
    }
    return rows;
}

inline Json real_vector_json(const std::vector<double>& v) {
    Json arr = Json::array();
    for (double x : v) arr.push(Json::of(x));
    return arr;
}

inline Json complex_vector_json(const std::vector<cx>& v) {
    Json arr = Json::array();
    for (const cx& x : v) arr.push(complex_json(x));
    return arr;
}

inline Json certificate_json(const KSCertificate& c) {
    Json j = Json::object();
    j.set("certified", Json::of(c.certified));
    j.set("mu_min", Json::of(c.mu_min));
    j.set("mu_max", Json::of(c.mu_max));
    j.set("spread", Json::of(c.spread));
    j.set("bound", Json::of(c.bound));
    j.set("c3", Json::of(c.c3));
    j.set("mu_policy", Json::of(kMuPolicy));
    Json reasons = Json::array();
    for (const auto& r : c.reasons) reasons.push(Json::of(r));
    j.set("reasons", std::move(reasons));
    return j;
}

inline Json ks_witness_json(const KSWitness& w) {
    Json j = Json::object();
    j.set("X", complex_matrix_json(w.X));
    j.set("min_eig", Json::of(w.min_eig));
    j.set("frobenius_norm_X", Json::of(w.frobenius_norm_X));
    return j;
}

inline Json pos_witness_json(const PositivityWitness& w) {
    Json j = Json::object();
    j.set("psi", complex_vector_json(w.psi));
    j.set("min_eig", Json::of(w.min_eig));
    return j;
}

inline Json classification_json(const MapClassification& c) {
    Json j = Json::object();

    Json cp = Json::object();
    cp.set("verdict", Json::of(c.cp));
    cp.set("min_choi_eig", Json::of(c.min_choi_eig));
    cp.set("tol", Json::of(c.options.tol));
    j.set("cp", std::move(cp));

    Json ks = Json::object();
    ks.set("verdict", Json::of(to_string(c.ks)));
    ks.set("certificate", c.certificate.has_value() ? certificate_json(*c.certificate) : Json::null());
    ks.set("certificate_scope", Json::of(c.certificate_scope));
    ks.set("certificate_skip_reason", Json::of(c.certificate_skip_reason));
    ks.set("witness", c.ks_witness.has_value() ? ks_witness_json(*c.ks_witness) : Json::null());
    ks.set("budget", Json::of(c.options.ks_budget));
    j.set("ks", std::move(ks));

    Json pos = Json::object();
    pos.set("verdict", Json::of(to_string(c.positive)));
    pos.set("witness", c.pos_witness.has_value() ? pos_witness_json(*c.pos_witness) : Json::null());
    pos.set("budget", Json::of(c.options.pos_budget));
    j.set("positive", std::move(pos));

    Json meta = Json::object();
    meta.set("seed", Json::of(c.options.seed));
    meta.set("tol", Json::of(c.options.tol));
    meta.set("c3", Json::of(c.c3));
    meta.set("violation_threshold", Json::of(kViolationThreshold));
    j.set("metadata", std::move(meta));

    Json findings = Json::array();
    for (const auto& f : c.findings) findings.push(Json::of(f));
    j.set("findings", std::move(findings));
    return j;
}

inline Json config_echo(const RunConfig& cfg, bool with_input, bool with_sweep) {
    Json j = Json::object();
    j.set("seed", Json::of(cfg.seed));
    j.set("budget", Json::of(cfg.budget));
    j.set("tol", Json::of(cfg.tol));
    j.set("format", Json::of(cfg.format));
    if (with_input) j.set("input", Json::of(cfg.input));
    if (with_sweep) {
        j.set("family", Json::of(cfg.family));
        j.set("a", Json::of(cfg.a_range));
        j.set("b", Json::of(cfg.b_range));
    }
    return j;
}

}  // namespace detail

inline UnitalMap resolve_map(const std::string& input) {
    if (input.empty()) throw InputError("no map given: pass a map file path or catalog:name");
    if (input.rfind("catalog:", 0) == 0) return catalog_map(input.substr(8));
    return parse_map_file(input);
}

inline ComplexMatrix load_operator(const std::string& path) {
    if (path.empty()) throw InputError("no operator given: pass an operator file path");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open operator file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("", "operator file root must be an object");
    if (!j.contains("d")) throw SchemaError("/d", "missing required key");
    if (!j["d"].is_number_integer() || j["d"].get<int>() != 3)
        throw SchemaError("/d", "only d = 3 is supported");
    if (!j.contains("matrix")) throw SchemaError("/matrix", "missing required key");
    return detail::complex_matrix_at(j["matrix"], "/matrix", 3);
}

inline Report run_constants(const RunConfig& cfg) {
    Report rep;
    rep.command = "constants";
    rep.config = detail::config_echo(cfg, false, false);

    const StructureConstants& sc = sc3();
    const double c3 = c3_constant(sc);

    Json result = Json::object();
    result.set("d", Json::of(3));
    result.set("c3", Json::of(c3));
    result.set("bound", Json::of(ks_bound(c3)));

    // canonical index triples, 1-based: i<j<k for f (antisymmetric), i≤j≤k for d
    Json f_nz = Json::array();
    Json d_nz = Json::array();
    for (int i = 0; i < sc.n; ++i)
        for (int j = i; j < sc.n; ++j)
            for (int k = j; k < sc.n; ++k) {
                const double fv = sc.f_at(i, j, k);
                if (i < j && j < k && std::abs(fv) > 1e-12) {
                    Json e = Json::object();
                    e.set("i", Json::of(i + 1));
                    e.set("j", Json::of(j + 1));
                    e.set("k", Json::of(k + 1));
                    e.set("value", Json::of(fv));
                    f_nz.push(std::move(e));
                }
                const double dv = sc.d_at(i, j, k);
                if (std::abs(dv) > 1e-12) {
                    Json e = Json::object();
                    e.set("i", Json::of(i + 1));
                    e.set("j", Json::of(j + 1));
                    e.set("k", Json::of(k + 1));
                    e.set("value", Json::of(dv));
                    d_nz.push(std::move(e));
                }
            }
    result.set("f_nonzero", std::move(f_nz));
    result.set("d_nonzero", std::move(d_nz));
    rep.result = std::move(result);
    return rep;
}

inline Report run_decompose(const RunConfig& cfg) {
    Report rep;
    rep.command = "decompose";
    rep.config = detail::config_echo(cfg, true, false);

    const ComplexMatrix X = load_operator(cfg.input);
    const BlochVector v = decompose(X, gm3());

    Json result = Json::object();
    result.set("w0", detail::complex_json(v.w0));
    result.set("w", detail::complex_vector_json(v.w));
    result.set("hermitian", Json::of(X.is_hermitian(kHermitianInputTol)));
    rep.result = std::move(result);
    return rep;
}

inline Report run_canonical(const RunConfig& cfg) {
    Report rep;
    rep.command = "canonical";
    rep.config = detail::config_echo(cfg, true, false);

    const UnitalMap map = resolve_map(cfg.input);
    const CanonicalForm cf = canonical_form(map.bloch());

    Json result = Json::object();
    result.set("T", detail::real_matrix_json(map.T()));
    result.set("R", detail::real_matrix_json(cf.R));
    result.set("S", detail::real_matrix_json(cf.S));
    result.set("mu", detail::real_vector_json(cf.mu));
    result.set("basis_change", detail::real_matrix_json(cf.basis_change));
    rep.result = std::move(result);
    return rep;
}

inline Report run_certify(const RunConfig& cfg) {
    Report rep;
    rep.command = "certify";
    rep.config = detail::config_echo(cfg, true, false);

    const UnitalMap map = resolve_map(cfg.input);
    const double c3 = c3_constant(sc3());

    std::string scope;
    auto mu = certifiable_mu(map.bloch(), &scope);
    std::string caveat;
    if (!mu.first.has_value()) {
        // non-symmetric T: certify the polar-equivalent map, labeled as such
        scope = "polar_canonical";
        caveat = "certificate applies to the polar-equivalent map (symmetric factor S), "
                 "not necessarily to the input map";
        mu.first = canonical_form(map.bloch()).mu;
    }

    Json result = Json::object();
    result.set("mu", detail::real_vector_json(*mu.first));
    result.set("mu_source", Json::of(scope));
    result.set("caveat", caveat.empty() ? Json::null() : Json::of(caveat));
    result.set("certificate", detail::certificate_json(certify_ks(*mu.first, c3)));
    rep.result = std::move(result);
    return rep;
}

inline Report run_search(const RunConfig& cfg) {
    Report rep;
    rep.command = "search";
    rep.config = detail::config_echo(cfg, true, false);

    const UnitalMap map = resolve_map(cfg.input);
    const SearchOutcome outcome = search_violation_full(map, cfg.budget, cfg.seed);

    Json result = Json::object();
    result.set("violation_found", Json::of(outcome.witness.has_value()));
    result.set("best_min_eig", Json::of(outcome.best_value));
    result.set("threshold", Json::of(kViolationThreshold));
    result.set("witness", outcome.witness.has_value() ? detail::ks_witness_json(*outcome.witness)
                                                      : Json::null());
    rep.result = std::move(result);
    return rep;
}

inline Report run_classify(const RunConfig& cfg) {
    Report rep;
    rep.command = "classify";
    rep.config = detail::config_echo(cfg, true, false);

    const UnitalMap map = resolve_map(cfg.input);
    ClassifyOptions options;
    options.ks_budget = cfg.budget;
    options.pos_budget = cfg.budget;
    options.seed = cfg.seed;
    options.tol = cfg.tol;
    rep.result = detail::classification_json(classify(map, options));
    return rep;
}

inline Report run_catalog(const RunConfig& cfg) {
    Report rep;
    rep.command = "catalog";
    rep.config = detail::config_echo(cfg, !cfg.input.empty(), false);

    Json result = Json::object();
    if (cfg.input.empty()) {
        Json entries = Json::array();
        for (const auto& e : catalog_list()) {
            Json entry = Json::object();
            entry.set("name", Json::of(e.name));
            entry.set("signature", Json::of(e.signature));
            entry.set("description", Json::of(e.description));
            entries.push(std::move(entry));
        }
        result.set("entries", std::move(entries));
    } else {
        const std::string ref =
            cfg.input.rfind("catalog:", 0) == 0 ? cfg.input.substr(8) : cfg.input;
        const UnitalMap map = catalog_map(ref);
        result.set("name", Json::of(ref));
        result.set("map", serialize_map(map));
    }
    rep.result = std::move(result);
    return rep;
}

namespace detail {

// "start:end:step", closed interval, final point kept when within 1e-12 of end
inline std::vector<double> parse_grid(const std::string& text, const std::string& flag) {
    if (text.empty()) throw InputError("sweep: missing grid for --" + flag + " (want start:end:step)");
    double start = 0.0, end = 0.0, step = 0.0;
    const size_t c1 = text.find(':');
    const size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw InputError("sweep: malformed grid '" + text + "' for --" + flag + " (want start:end:step)");
    try {
        start = std::stod(text.substr(0, c1));
        end = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        step = std::stod(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw InputError("sweep: malformed grid '" + text + "' for --" + flag + "'");
    }
    if (step <= 0.0) throw InputError("sweep: grid step must be positive in '" + text + "'");
    if (end < start) throw InputError("sweep: grid end must be >= start in '" + text + "'");
    std::vector<double> values;
    for (int i = 0;; ++i) {
        const double v = start + step * i;
        if (v > end + 1e-12) break;
        values.push_back(v);
    }
    return values;
}

struct MuFamily {
    // per component: 0 → literal, 1 → a, 2 → b
    std::array<int, 8> role{};
    std::array<double, 8> literal{};
    bool uses_a = false;
    bool uses_b = false;

    std::vector<double> instantiate(double a, double b) const {
        std::vector<double> mu(8);
        for (size_t k = 0; k < 8; ++k)
            mu[k] = role[k] == 0 ? literal[k] : (role[k] == 1 ? a : b);
        return mu;
    }
};

inline MuFamily parse_family(const std::string& text) {
    const std::string want = "mu=(v1,...,v8) with each v a number or the symbol a or b";
    if (text.rfind("mu=(", 0) != 0 || text.back() != ')')
        throw InputError("sweep: malformed family '" + text + "' (want " + want + ")");
    const std::string body = text.substr(4, text.size() - 5);
    std::vector<std::string> tokens;
    std::string cur;
    for (const char c : body) {
        if (c == ',') {
            tokens.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur.push_back(c);
        }
    }
    tokens.push_back(cur);
    if (tokens.size() != 8)
        throw InputError("sweep: family must list 8 components, got " + std::to_string(tokens.size()));

    MuFamily fam;
    for (size_t k = 0; k < 8; ++k) {
        const std::string& t = tokens[k];
        if (t == "a") {
            fam.role[k] = 1;
            fam.uses_a = true;
        } else if (t == "b") {
            fam.role[k] = 2;
            fam.uses_b = true;
        } else {
            try {
                size_t used = 0;
                fam.literal[k] = std::stod(t, &used);
                if (used != t.size()) throw std::invalid_argument(t);
            } catch (const std::exception&) {
                throw InputError("sweep: bad family component '" + t + "'");
            }
            fam.role[k] = 0;
        }
    }
    return fam;
}

}  // namespace detail

inline Report run_sweep(const RunConfig& cfg) {
    Report rep;
    rep.command = "sweep";
    rep.config = detail::config_echo(cfg, false, true);

    const detail::MuFamily fam = detail::parse_family(cfg.family);
    const std::vector<double> a_vals =
        fam.uses_a ? detail::parse_grid(cfg.a_range, "a") : std::vector<double>{0.0};
    const std::vector<double> b_vals =
        fam.uses_b ? detail::parse_grid(cfg.b_range, "b") : std::vector<double>{0.0};

    const double c3 = c3_constant(sc3());

    CsvTable table;
    table.header = {"a", "b", "mu_spread", "certified", "violation_found", "min_eig", "cp"};
    Json rows = Json::array();

    std::uint64_t row_index = 0;
    for (const double a : a_vals)
        for (const double b : b_vals) {
            std::vector<double> mu = fam.instantiate(a, b);
            const UnitalMap map = UnitalMap::from_diagonal(mu);
            const KSCertificate cert = certify_ks(mu, c3);
            const SearchOutcome outcome =
                search_violation_full(map, cfg.budget, mix_seed(cfg.seed, row_index));
            const bool cp = is_cp(map, cfg.tol).first;

            table.rows.push_back({Json::format_double(a), Json::format_double(b),
                                  Json::format_double(cert.spread), cert.certified ? "true" : "false",
                                  outcome.witness.has_value() ? "true" : "false",
                                  Json::format_double(outcome.best_value), cp ? "true" : "false"});

            Json row = Json::object();
            row.set("a", Json::of(a));
            row.set("b", Json::of(b));
            row.set("mu_spread", Json::of(cert.spread));
            row.set("certified", Json::of(cert.certified));
            row.set("violation_found", Json::of(outcome.witness.has_value()));
            row.set("min_eig", Json::of(outcome.best_value));
            row.set("cp", Json::of(cp));
            rows.push(std::move(row));
            ++row_index;
        }

    Json result = Json::object();
    result.set("rows", std::move(rows));
    rep.result = std::move(result);
    rep.csv = std::move(table);
    return rep;
}

inline Report run(const std::string& command, const RunConfig& cfg) {
    if (command == "constants") return run_constants(cfg);
    if (command == "decompose") return run_decompose(cfg);
    if (command == "canonical") return run_canonical(cfg);
    if (command == "certify") return run_certify(cfg);
    if (command == "search") return run_search(cfg);
    if (command == "classify") return run_classify(cfg);
    if (command == "catalog") return run_catalog(cfg);
    if (command == "sweep") return run_sweep(cfg);
    throw UnknownCommand("unknown command '" + command + "'");
}

}  // namespace ks3
