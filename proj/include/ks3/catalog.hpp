/*
 * Named map catalog: identity, transposition, depolarizing(p),
 * completely_depolarizing, unitary_conjugation(θ).
 *
 * Catalog references are spelled `name` or `name(param)`; the CLI accepts
 * them as `catalog:name(...)` wherever a map file is expected. Transposition
 * is the canonical positive-but-not-KS example: diagonal Bloch matrix with
 * −1 exactly at the antisymmetric generators λ₂, λ₅, λ₇.
 */
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ks3/bloch.hpp"
#include "ks3/error.hpp"
#include "ks3/map.hpp"

namespace ks3 {

struct CatalogEntry {
    std::string name;
    std::string signature;    // how to spell it, e.g. "depolarizing(p)"
    std::string description;
};

inline std::vector<CatalogEntry> catalog_list() {
    return {
        {"identity", "identity", "identity map, mu = (1,...,1)"},
        {"transposition", "transposition",
         "X -> X^T; positive and unital but neither KS nor CP; mu = (1,-1,1,1,-1,1,-1,1)"},
        {"depolarizing", "depolarizing(p)", "X -> p X + (1-p) Tr(X) I/3; mu = (p,...,p)"},
        {"completely_depolarizing", "completely_depolarizing", "X -> Tr(X) I/3; mu = 0"},
        {"unitary_conjugation", "unitary_conjugation(theta)",
         "X -> U X U* with U = diag(1, 1, e^{i theta}); theta defaults to pi/3"},
    };
}

namespace detail {

struct CatalogRef {
    std::string name;
    std::optional<double> param;
};

inline CatalogRef parse_catalog_ref(const std::string& spec) {
    CatalogRef ref;
    const size_t open = spec.find('(');
    if (open == std::string::npos) {
        ref.name = spec;
        return ref;
    }
    if (spec.back() != ')')
        throw InputError("catalog: malformed reference '" + spec + "' (missing closing parenthesis)");
    ref.name = spec.substr(0, open);
    const std::string arg = spec.substr(open + 1, spec.size() - open - 2);
    try {
        size_t used = 0;
        ref.param = std::stod(arg, &used);
        if (used != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
        throw InputError("catalog: cannot parse parameter '" + arg + "' in '" + spec + "'");
    }
    return ref;
}

}  // namespace detail

// `spec` is a catalog reference without the "catalog:" prefix.
inline UnitalMap catalog_map(const std::string& spec) {
    const detail::CatalogRef ref = detail::parse_catalog_ref(spec);

    if (ref.name == "identity") return UnitalMap::from_diagonal(std::vector<double>(8, 1.0));
    if (ref.name == "transposition")
        return UnitalMap::from_diagonal({1.0, -1.0, 1.0, 1.0, -1.0, 1.0, -1.0, 1.0});
    if (ref.name == "completely_depolarizing") return UnitalMap::from_diagonal(std::vector<double>(8, 0.0));
    if (ref.name == "depolarizing") {
        if (!ref.param.has_value())
            throw InputError("catalog: depolarizing requires a parameter, e.g. depolarizing(0.5)");
        return UnitalMap::from_diagonal(std::vector<double>(8, *ref.param));
    }
    if (ref.name == "unitary_conjugation") {
        const double theta = ref.param.value_or(std::acos(-1.0) / 3.0);
        ComplexMatrix U = ComplexMatrix::identity(3);
        U(2, 2) = cx{std::cos(theta), std::sin(theta)};
        return UnitalMap::from_bloch(adjoint_orthogonal(U, gm3()));
    }
    throw InputError("catalog: unknown map '" + ref.name + "'");
}

}  // namespace ks3
