#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include <ks3/catalog.hpp>
#include <ks3/ks.hpp>

using namespace ks3;

namespace {

ComplexMatrix unit_entry(int r, int c) {
    ComplexMatrix m(3);
    m(r, c) = 1.0;
    return m;
}

std::vector<double> random_mu(Rng& rng, double lo, double hi) {
    std::vector<double> mu(8);
    for (double& m : mu) m = rng.uniform(lo, hi);
    return mu;
}

}  // namespace

TEST_CASE("ks_difference: transposition counterexample at E12") {
    const UnitalMap t = catalog_map("transposition");
    const ComplexMatrix delta = ks_difference(t, unit_entry(0, 1));

    ComplexMatrix expected(3);
    expected(0, 0) = -1.0;
    expected(1, 1) = 1.0;
    CHECK(distance_frobenius(delta, expected) < 1e-13);
    CHECK(min_eigenvalue(delta) == Catch::Approx(-1.0).margin(1e-12));
}

TEST_CASE("ks_difference: vanishes identically for the identity map") {
    const UnitalMap ident = catalog_map("identity");
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial)
        CHECK(ks_difference(ident, random_matrix(3, rng)).frobenius_norm() < 1e-13);
}

TEST_CASE("ks_expansion: reconstruction equals the direct difference") {
    Rng rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const std::vector<double> mu = random_mu(rng, -1.0, 1.0);
        const UnitalMap map = UnitalMap::from_diagonal(mu);
        const ComplexMatrix x = random_matrix(3, rng);

        const KSExpansion e = ks_expansion(mu, decompose(x, gm3()), sc3());
        CHECK(distance_frobenius(reconstruct_expansion(e, gm3()), ks_difference(map, x)) < 1e-10);
    }
}

TEST_CASE("ks_expansion: alpha term and the f-term split") {
    Rng rng(19);

    SECTION("alpha is nonnegative whenever |mu| <= 1, and scales as stated") {
        for (int trial = 0; trial < 50; ++trial) {
            const std::vector<double> mu = random_mu(rng, -1.0, 1.0);
            const BlochVector v = decompose(random_matrix(3, rng), gm3());
            const KSExpansion e = ks_expansion(mu, v, sc3());

            double expected = 0.0;
            for (int i = 0; i < 8; ++i)
                expected += (1.0 - mu[static_cast<size_t>(i)] * mu[static_cast<size_t>(i)]) *
                            std::norm(v.w[static_cast<size_t>(i)]);
            expected *= 2.0 / 3.0;
            CHECK(e.alpha == Catch::Approx(expected).margin(1e-12));
            CHECK(e.alpha >= -1e-12);
        }
    }

    SECTION("antisymmetric part vanishes for Hermitian arguments") {
        for (int trial = 0; trial < 30; ++trial) {
            const std::vector<double> mu = random_mu(rng, -1.0, 1.0);
            const BlochVector v = decompose(random_hermitian(3, rng), gm3());
            const KSExpansion e = ks_expansion(mu, v, sc3());
            for (double b : e.beta_antisym) CHECK(std::abs(b) < 1e-12);
        }
    }

    SECTION("antisymmetric part is genuinely nonzero off the Hermitian slice") {
        // E12 has complex Bloch coefficients (w1, w2) = (1/2, i/2)
        const std::vector<double> mu{0.9, 0.1, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
        const KSExpansion e = ks_expansion(mu, decompose(unit_entry(0, 1), gm3()), sc3());
        double largest = 0.0;
        for (double b : e.beta_antisym) largest = std::max(largest, std::abs(b));
        CHECK(largest > 1e-3);
    }
}

TEST_CASE("c3_constant and ks_bound: pinned closed forms") {
    const double c3 = c3_constant(sc3());
    CHECK(c3 == Catch::Approx(4.0 * std::sqrt(6.0)).margin(1e-12));
    CHECK(ks_bound(c3) == Catch::Approx(std::sqrt(3.0) / 18.0).margin(1e-15));
}

TEST_CASE("certify_ks: clause behavior") {
    const double c3 = c3_constant(sc3());
    const double bound = ks_bound(c3);

    SECTION("identity certifies") {
        const KSCertificate cert = certify_ks(std::vector<double>(8, 1.0), c3);
        CHECK(cert.certified);
        CHECK(cert.reasons.empty());
        CHECK(cert.spread == Catch::Approx(0.0).margin(1e-15));
    }

    SECTION("uniform contraction certifies at any level in [0, 1]") {
        CHECK(certify_ks(std::vector<double>(8, 0.3), c3).certified);
        CHECK(certify_ks(std::vector<double>(8, 0.0), c3).certified);
    }

    SECTION("transposition's signed mu fails two clauses") {
        const KSCertificate cert = certify_ks({1, -1, 1, 1, -1, 1, -1, 1}, c3);
        CHECK_FALSE(cert.certified);
        CHECK(cert.mu_min == Catch::Approx(-1.0));
        CHECK(cert.spread == Catch::Approx(2.0));
        CHECK(cert.reasons.size() == 2);
    }

    SECTION("spread just inside / just outside the bound") {
        std::vector<double> tight(8, 0.5);
        tight[7] = 0.5 + bound - 1e-9;
        CHECK(certify_ks(tight, c3).certified);

        std::vector<double> wide(8, 0.5);
        wide[7] = 0.5 + bound + 1e-6;
        const KSCertificate cert = certify_ks(wide, c3);
        CHECK_FALSE(cert.certified);
        CHECK(cert.reasons.size() == 1);
    }

    SECTION("negative entries are rejected even with zero spread") {
        CHECK_FALSE(certify_ks(std::vector<double>(8, -0.2), c3).certified);
    }
}

TEST_CASE("search_violation: finds the transposition witness") {
    const UnitalMap t = catalog_map("transposition");
    const auto witness = search_violation(t, 200, 0);

    REQUIRE(witness.has_value());
    CHECK(witness->min_eig <= -0.99);
    CHECK(witness->frobenius_norm_X == Catch::Approx(1.0).margin(1e-10));
    // re-verify from scratch
    CHECK(min_eigenvalue(ks_difference(t, witness->X)) ==
          Catch::Approx(witness->min_eig).margin(1e-12));
}

TEST_CASE("search_violation: silent on the identity map") {
    CHECK_FALSE(search_violation(catalog_map("identity"), 60, 0).has_value());
}

TEST_CASE("search_violation: certified map with a genuine violation") {
    // mu = (1,...,1,0.99) satisfies the certifier (spread 0.01 << bound), yet
    // Delta(lambda1/sqrt(2)) = ((mu8-1)/sqrt(3)) lambda8 / 2 has a negative eigenvalue.
    std::vector<double> mu(8, 1.0);
    mu[7] = 0.99;
    const UnitalMap map = UnitalMap::from_diagonal(mu);

    CHECK(certify_ks(mu, c3_constant(sc3())).certified);

    const cx inv_sqrt2{1.0 / std::sqrt(2.0), 0.0};
    const ComplexMatrix x = inv_sqrt2 * gm3().lambda(1);
    CHECK(min_eigenvalue(ks_difference(map, x)) ==
          Catch::Approx((0.99 - 1.0) / 6.0).margin(1e-12));

    const auto witness = search_violation(map, 200, 0);
    REQUIRE(witness.has_value());
    CHECK(witness->min_eig < -1e-3);
}

TEST_CASE("kadison_contraction_check: positive unital maps contract") {
    for (const char* name : {"identity", "transposition", "completely_depolarizing"}) {
        const ContractionReport rep = kadison_contraction_check(catalog_map(name), 100, 7);
        CHECK(rep.passed);
        CHECK(rep.samples == 100);
        CHECK(rep.max_ratio <= 1.0 + 1e-10);
    }
}

TEST_CASE("normal_operator_audit: transposition is safe on normal operators") {
    const NormalAuditReport rep = normal_operator_audit(catalog_map("transposition"), 100, 13);
    CHECK(rep.all_psd);
    CHECK(rep.worst_min_eig > -1e-9);
}

TEST_CASE("search_violation: byte-identical across thread counts") {
    const UnitalMap t = catalog_map("transposition");

    unsetenv("KS3_THREADS");
    const SearchOutcome serial = search_violation_full(t, 60, 7);

    setenv("KS3_THREADS", "4", 1);
    const SearchOutcome threaded = search_violation_full(t, 60, 7);
    unsetenv("KS3_THREADS");

    CHECK(serial.best_value == threaded.best_value);
    REQUIRE(serial.witness.has_value());
    REQUIRE(threaded.witness.has_value());
    CHECK(distance_frobenius(serial.witness->X, threaded.witness->X) == 0.0);
}
