#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "loopsmith/group.hpp"
#include "loopsmith/loop.hpp"
#include "loopsmith/product.hpp"
#include "loopsmith/sections.hpp"

using namespace loopsmith;

namespace {

template <typename Fn>
std::string expect_error(errc kind, Fn&& fn) {
    try {
        fn();
    } catch (const loop_error& e) {
        CHECK(e.code() == kind);
        return e.what();
    }
    FAIL("expected a loop_error");
    return {};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// K = cyclic(3), P = symmetric(3), S = cyclic(2), phi(1) = the rank-2
// transposition, g = (0, 1, 1): the standard proper order-18 example.
ProductSpec spec18() {
    return ProductSpec{cyclic(3), symmetric(3), cyclic(2), Mapping{{0, 2}}, Mapping{{0, 1, 1}}};
}

std::map<std::string, std::string> trailer_map(const Report& rep) {
    return {rep.trailer.begin(), rep.trailer.end()};
}

} // namespace

TEST_CASE("validation reports the earliest failing clause") {
    // Shape problems come first, whatever else is wrong.
    ProductSpec bad_phi_len{cyclic(3), symmetric(3), cyclic(2), Mapping{{0}}, Mapping{{0, 1, 1}}};
    auto m0 = expect_error(errc::size_mismatch, [&] { validate_spec(bad_phi_len); });
    CHECK(contains(m0, "phi must assign an image to every element of S"));
    ProductSpec bad_g_len{cyclic(3), symmetric(3), cyclic(2), Mapping{{0, 2}}, Mapping{{0, 1}}};
    expect_error(errc::size_mismatch, [&] { validate_spec(bad_g_len); });
    ProductSpec bad_range{cyclic(3), symmetric(3), cyclic(2), Mapping{{0, 9}}, Mapping{{0, 1, 1}}};
    auto m1 = expect_error(errc::size_mismatch, [&] { validate_spec(bad_range); });
    CHECK(contains(m1, "phi(1) is not an element of P"));

    // An abelian P is reported before the (also broken) phi.
    ProductSpec abelian{cyclic(3), cyclic(6), cyclic(2), Mapping{{0, 0}}, Mapping{{0, 1, 1}}};
    auto m2 = expect_error(errc::p_abelian, [&] { validate_spec(abelian); });
    CHECK(contains(m2, "P is abelian"));

    // A non-identity-preserving g is reported before the broken phi.
    ProductSpec bad_g{cyclic(3), symmetric(3), cyclic(2), Mapping{{0, 0}}, Mapping{{1, 0, 1}}};
    auto m3 = expect_error(errc::g_not_identity_preserving, [&] { validate_spec(bad_g); });
    CHECK(contains(m3, "identity of K"));

    ProductSpec not_mono{cyclic(3), symmetric(3), cyclic(2), Mapping{{0, 0}}, Mapping{{0, 1, 1}}};
    auto m4 = expect_error(errc::phi_not_mono, [&] { validate_spec(not_mono); });
    CHECK(contains(m4, "injective homomorphism"));
    // Injective but not a homomorphism is equally rejected.
    ProductSpec not_hom{cyclic(3), symmetric(3), cyclic(2), Mapping{{0, 3}}, Mapping{{0, 1, 1}}};
    expect_error(errc::phi_not_mono, [&] { validate_spec(not_hom); });

    // phi landing in the centre of P (here -1 in the quaternions).
    ProductSpec central{cyclic(3), quaternion8(), cyclic(2), Mapping{{0, 1}}, Mapping{{0, 1, 1}}};
    auto m5 = expect_error(errc::centre_intersection, [&] { validate_spec(central); });
    CHECK(contains(m5, "centre"));

    // Full mode only: the graph of g must generate K x S...
    ProductSpec no_gen{cyclic(3), symmetric(3), cyclic(2), Mapping{{0, 2}}, Mapping{{0, 0, 0}}};
    auto m6 = expect_error(errc::generation_failure, [&] { validate_spec(no_gen); });
    CHECK(contains(m6, "do not generate K x S"));

    // ...and with a trivial S generation holds, exposing the homomorphism
    // clause itself.
    ProductSpec hom_g{cyclic(3), symmetric(3), cyclic(1), Mapping{{0}}, Mapping{{0, 0, 0}}};
    auto m7 = expect_error(errc::g_is_homomorphism, [&] { validate_spec(hom_g); });
    CHECK(contains(m7, "g is a homomorphism"));

    // The standard example passes full validation.
    CHECK_NOTHROW(validate_spec(spec18()));
}

TEST_CASE("experiment mode stops before the properness clauses") {
    // Trivial (homomorphic, non-generating) g is fine for experiments.
    ProductSpec hom{cyclic(3), symmetric(3), cyclic(2), Mapping{{0, 2}}, Mapping{{0, 0, 0}}};
    CHECK_NOTHROW(validate_spec(hom, ValidationMode::experiment));
    expect_error(errc::generation_failure, [&] { validate_spec(hom, ValidationMode::full); });

    // With no twist the loop is exactly the direct product group.
    FiniteLoop L = build_product_loop(hom, ValidationMode::experiment);
    CHECK(L.table == direct_product({cyclic(3), symmetric(3)}).table);
    CHECK(is_associative(L));

    // Structural clauses still apply in experiment mode.
    ProductSpec central{cyclic(3), quaternion8(), cyclic(2), Mapping{{0, 1}}, Mapping{{0, 0, 0}}};
    expect_error(errc::centre_intersection, [&] { validate_spec(central, ValidationMode::experiment); });
}

TEST_CASE("the product table matches an independent evaluation of the twist") {
    ProductSpec spec = spec18();
    FiniteLoop L = build_product_loop(spec);
    REQUIRE(L.order == 18);
    const FiniteGroup &K = spec.K, &P = spec.P;
    for (int a1 = 0; a1 < K.order; ++a1)
        for (int b1 = 0; b1 < P.order; ++b1)
            for (int a2 = 0; a2 < K.order; ++a2)
                for (int b2 = 0; b2 < P.order; ++b2) {
                    int c = spec.phi.image[static_cast<std::size_t>(
                        spec.g.image[static_cast<std::size_t>(a1)])];
                    int twisted = P.mul(P.mul(c, b2), P.inv(c));
                    int expect_a = K.mul(a1, a2);
                    int expect_b = P.mul(b1, twisted);
                    CHECK(L.mul(a1 * P.order + b1, a2 * P.order + b2) ==
                          expect_a * P.order + expect_b);
                }
}

TEST_CASE("every identity-preserving g yields a loop, a group iff g is one") {
    // Sweep all four identity-preserving maps cyclic(3) -> cyclic(2).
    for (int g1 = 0; g1 < 2; ++g1)
        for (int g2 = 0; g2 < 2; ++g2) {
            Mapping g{{0, g1, g2}};
            ProductSpec spec{cyclic(3), symmetric(3), cyclic(2), Mapping{{0, 2}}, g};
            FiniteLoop L = build_product_loop(spec, ValidationMode::experiment);
            CHECK(L.order == 18); // construction already validated the table
            bool hom = is_homomorphism(spec.K, spec.S, g);
            CHECK(is_associative(L) == hom);
            CHECK(hom == (g1 == 0 && g2 == 0)); // only the trivial map
        }
}

TEST_CASE("the realization embeds the product loop as a group section") {
    ProductSpec spec = spec18();
    ProductRealization r = build_group_and_section(spec);
    CHECK(r.G.order == 36);
    CHECK(r.H.members == std::vector<int>{0, 5});
    CHECK(r.section.choice ==
          std::vector<int>{0, 4, 2, 8, 6, 10, 17, 13, 21, 15, 23, 19, 29, 25, 33, 27, 35, 31});
    CHECK(is_sharply_transitive(r.G, r.H, r.section.choice));
    CHECK(normal_core(r.G, r.H).members == std::vector<int>{0});

    // coset_pair is a bijection onto the product-loop elements...
    std::vector<int> seen(18, 0);
    for (int v : r.coset_pair) {
        REQUIRE(v >= 0);
        REQUIRE(v < 18);
        ++seen[static_cast<std::size_t>(v)];
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
    CHECK(r.coset_pair[0] == 0);

    // ...and transports the section-induced loop onto the product loop.
    FiniteLoop L = build_product_loop(spec);
    FiniteLoop Ls = loop_from_section(r.G, r.H, r.section);
    for (int c = 0; c < 18; ++c)
        for (int d = 0; d < 18; ++d)
            CHECK(L.mul(r.coset_pair[static_cast<std::size_t>(c)],
                        r.coset_pair[static_cast<std::size_t>(d)]) ==
                  r.coset_pair[static_cast<std::size_t>(Ls.mul(c, d))]);
}

TEST_CASE("properness report states the associativity equivalence") {
    Report rep = properness_report(spec18());
    auto t = trailer_map(rep);
    CHECK(t.at("order") == "18");
    CHECK(t.at("associative") == "false");
    CHECK(t.at("g_homomorphism") == "false");
    CHECK(t.at("properness_equivalence") == "holds");
    CHECK(contains(rep.text, "order 18"));
    CHECK(contains(rep.text, "witness 6,6,1"));

    ProductSpec hom{cyclic(3), symmetric(3), cyclic(2), Mapping{{0, 2}}, Mapping{{0, 0, 0}}};
    auto t2 = trailer_map(properness_report(hom));
    CHECK(t2.at("associative") == "true");
    CHECK(t2.at("g_homomorphism") == "true");
    CHECK(t2.at("properness_equivalence") == "holds");
}

TEST_CASE("decomposition report verifies the loop anatomy") {
    Report rep = decomposition_report(spec18());
    auto t = trailer_map(rep);
    CHECK(t.at("order") == "18");
    CHECK(t.at("n_normal") == "true");
    CHECK(t.at("n_isomorphic_p") == "true");
    CHECK(t.at("k_copy_isomorphic_k") == "true");
    CHECK(t.at("unique_factorization") == "true");
    CHECK(t.at("quotient_isomorphic_k") == "true");
    CHECK(contains(rep.text, "tables match exactly"));
}

TEST_CASE("torus variant assembles cyclic factors with its own preconditions") {
    ProductSpec spec = torus_variant_spec(4, 2, symmetric(3), Mapping{{0, 2}}, Mapping{{0, 1, 1, 0}});
    CHECK(spec.K.order == 4);
    CHECK(spec.S.order == 2);
    FiniteLoop L = build_product_loop(spec);
    CHECK(L.order == 24);
    CHECK_FALSE(is_associative(L));
    ProductRealization r = build_group_and_section(spec);
    CHECK(r.G.order == 48);

    auto m1 = expect_error(errc::builder_precondition, [] {
        torus_variant_spec(0, 1, symmetric(3), Mapping{{0}}, Mapping{{}});
    });
    CHECK(contains(m1, "m must be positive"));
    auto m2 = expect_error(errc::builder_precondition, [] {
        torus_variant_spec(4, 0, symmetric(3), Mapping{{0}}, Mapping{{0, 0, 0, 0}});
    });
    CHECK(contains(m2, "s must be positive"));
    auto m3 = expect_error(errc::builder_precondition, [] {
        torus_variant_spec(4, 3, symmetric(3), Mapping{{0, 3, 4}}, Mapping{{0, 1, 2, 1}});
    });
    CHECK(contains(m3, "s must divide m"));
    auto m4 = expect_error(errc::builder_precondition, [] {
        torus_variant_spec(4, 2, symmetric(3), Mapping{{0, 2}}, Mapping{{0, 0, 0, 0}});
    });
    CHECK(contains(m4, "surjective"));
    expect_error(errc::size_mismatch, [] {
        torus_variant_spec(4, 2, symmetric(3), Mapping{{0, 2}}, Mapping{{0, 1}});
    });
    expect_error(errc::size_mismatch, [] {
        torus_variant_spec(4, 2, symmetric(3), Mapping{{0, 2}}, Mapping{{0, 1, 5, 1}});
    });
    auto m5 = expect_error(errc::g_not_identity_preserving, [] {
        torus_variant_spec(4, 2, symmetric(3), Mapping{{0, 2}}, Mapping{{1, 0, 1, 0}});
    });
    CHECK(contains(m5, "identity of cyclic(m)"));
    auto m6 = expect_error(errc::g_is_homomorphism, [] {
        torus_variant_spec(4, 2, symmetric(3), Mapping{{0, 2}}, Mapping{{0, 1, 0, 1}});
    });
    CHECK(contains(m6, "g is a homomorphism"));
}
