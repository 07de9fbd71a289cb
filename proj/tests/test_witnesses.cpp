#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "crncert/witness.hpp"
#include "test_util.hpp"

using namespace crncert;
using testutil::load_corpus;
using testutil::negative_part;

namespace {

RatMatrix reactant_matrix(const Network& net) {
    return stoichiometric_matrices(irreversible_expansion(net)).gamma_left;
}

}  // namespace

TEST_CASE("collision witness is gated by the sign classification") {
    Network basic = load_corpus("two_reversible");
    CHECK_FALSE(collision_witness(basic, reactant_matrix(basic)).has_value());

    Network disc = load_corpus("binding_no_exchange");
    auto w = collision_witness(disc, reactant_matrix(disc));
    REQUIRE(w.has_value());
    CHECK(w->residual <= 1e-9);
    CHECK(w->x != w->y);
    ResidualReport rep = verify_witness(disc, *w);
    CHECK(rep.pass);
}

TEST_CASE("collision witness for a mixed comparison matrix") {
    // perturb the reactant matrix inside the rate-pattern support until the
    // minor products change sign at the rank size
    Network net = load_corpus("double_binding");
    Network exp = irreversible_expansion(net);
    SignPatternMatrix P = rate_pattern(exp);
    std::mt19937 rng(43);
    std::uniform_int_distribution<int> mag(1, 9);
    bool exercised = false;
    for (int t = 0; t < 100 && !exercised; ++t) {
        RatMatrix M(P.rows(), P.cols());
        for (int j = 0; j < P.rows(); ++j)
            for (int i = 0; i < P.cols(); ++i)
                if (P.at(j, i) == SignEntry::POS) M.at(j, i) = Rat(mag(rng), mag(rng));
        M = M.transpose();  // n x m like the reactant matrix
        if (m_concordance(net, M) != ProductSign::Mixed) continue;
        exercised = true;
        auto w = collision_witness(net, M);
        REQUIRE(w.has_value());
        CHECK(w->residual <= 1e-9);
        CHECK(verify_witness(net, *w).pass);
    }
    CHECK(exercised);
}

TEST_CASE("equilibria pair witness on one stoichiometry class") {
    for (const auto& name : {"double_binding", "triangle_complexes"}) {
        Network net = load_corpus(name);
        auto w = class_multistationarity_witness(net);
        REQUIRE(w.has_value());
        CHECK(w->residual_x <= 1e-9);
        CHECK(w->residual_y <= 1e-9);
        CHECK(w->class_offset <= 1e-9);
        CHECK(w->x != w->y);
        for (double v : w->x) CHECK(v > 0);
        for (double v : w->y) CHECK(v > 0);
        CHECK(verify_witness(net, *w).pass);
    }

    CHECK_FALSE(class_multistationarity_witness(load_corpus("two_reversible")).has_value());
}

TEST_CASE("exponent rescaling preserves the equilibria pair construction") {
    Network net = load_corpus("double_binding");
    for (double lambda : {2.0, 10.0}) {
        auto w = class_multistationarity_witness(net, 1e-9, 1, lambda);
        REQUIRE(w.has_value());
        CHECK(verify_witness(net, *w).pass);
    }
}

TEST_CASE("open-system collision witness") {
    Network aut = load_corpus("autocatalytic");
    RatMatrix Maut = negative_part(stoichiometric_matrices(irreversible_expansion(aut)).gamma);
    auto w1 = open_collision_witness(aut, Maut);
    REQUIRE(w1.has_value());
    CHECK(w1->residual <= 1e-9);
    CHECK(verify_witness(aut, *w1).pass);

    Network ob = load_corpus("open_binding");
    auto w2 = open_collision_witness(ob, reactant_matrix(ob));
    REQUIRE(w2.has_value());
    CHECK(w2->residual <= 1e-9);
    CHECK(verify_witness(ob, *w2).pass);

    // flow-compatible at every size: construction must refuse
    Network dbl = load_corpus("double_binding");
    CHECK_FALSE(open_collision_witness(dbl, reactant_matrix(dbl)).has_value());
}

TEST_CASE("open-system equilibria pair from an incompatibility certificate") {
    Network amp = parse_network("2A + B -> 3A\nA -> B\n");
    auto cert = strong_incompatibility_search(amp, reactant_matrix(amp));
    REQUIRE(cert.has_value());
    OpenSystemWitness w = open_multistationarity_witness(amp, *cert);
    CHECK(w.residual_x <= 1e-9);
    CHECK(w.residual_y <= 1e-9);
    CHECK(w.x != w.y);
    for (double v : w.outflow) CHECK(v > 0);
    for (double v : w.inflow) CHECK(v > 0);
    CHECK(verify_witness(amp, w).pass);
}

TEST_CASE("verification rejects corrupted witnesses") {
    Network net = load_corpus("double_binding");
    auto w = class_multistationarity_witness(net);
    REQUIRE(w.has_value());

    EquilibriaPairWitness bent = *w;
    bent.y[0] += 1e-3;
    CHECK_FALSE(verify_witness(net, bent).pass);

    EquilibriaPairWitness collapsed = *w;
    collapsed.y = collapsed.x;
    CHECK_FALSE(verify_witness(net, collapsed).pass);
}
