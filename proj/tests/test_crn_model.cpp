#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crncert/crn.hpp"
#include "test_util.hpp"

using namespace crncert;
using testutil::load_corpus;

TEST_CASE("parser basics") {
    Network net = parse_network("A + B <-> C\n2A <-> B\n");
    REQUIRE(net.species == std::vector<std::string>{"A", "B", "C"});
    REQUIRE(net.reactions.size() == 2);
    CHECK(net.reactions[0].reversible);
    StoichTriple st = stoichiometric_matrices(net);
    CHECK(st.gamma == RatMatrix::from_int_rows({{-1, -2}, {-1, 1}, {1, 0}}));

    Network open = parse_network("C <-> 0\n");
    StoichTriple so = stoichiometric_matrices(open);
    CHECK(so.gamma == RatMatrix::from_int_rows({{-1}}));

    Network sink = parse_network("A -> 0\n");
    CHECK(stoichiometric_matrices(sink).gamma == RatMatrix::from_int_rows({{-1}}));
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_network("A -> -> B\n"), ParseError);
    CHECK_THROWS_AS(parse_network("0 -> 0\n"), ParseError);
    CHECK_THROWS_AS(parse_network("A -> b + B\n"), ParseError);  // case-colliding species
    CHECK_THROWS_AS(parse_network("A -> 0 + B\n"), ParseError);
    CHECK_THROWS_AS(parse_network("A -"), ParseError);
    CHECK_THROWS_AS(parse_network("2/0 A -> B\n"), ParseError);
    try {
        parse_network("A -> B\nA -> -> B\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("comments, blank lines, rational coefficients") {
    Network net = parse_network("# header\n\nA -> B  # trailing\n1/2 A -> C\n");
    REQUIRE(net.reactions.size() == 2);
    StoichTriple st = stoichiometric_matrices(net);
    CHECK(st.gamma_left.at(0, 1) == Rat(1, 2));
}

TEST_CASE("parse/render round trip") {
    for (const auto& name : testutil::corpus_names()) {
        Network net = load_corpus(name);
        Network again = parse_network(render_network(net));
        CHECK(net == again);
    }
}

TEST_CASE("irreversible expansion") {
    // A+B <-> C, 2A+B <-> D
    Network net = load_corpus("double_binding");
    Network exp = irreversible_expansion(net);
    StoichTriple st = stoichiometric_matrices(exp);
    CHECK(st.gamma == RatMatrix::from_int_rows(
                          {{-1, 1, -2, 2}, {-1, 1, -1, 1}, {1, -1, 0, 0}, {0, 0, 1, -1}}));
    CHECK(irreversible_expansion(exp) == exp);  // fixed point on irreversible input

    // forward+backward column pairs lie in the kernel
    auto basis = kernel_basis(st.gamma);
    CHECK(!basis.empty());
}

TEST_CASE("rate pattern") {
    Network net = parse_network("A + B <-> C\n2A <-> B\n");
    SignPatternMatrix P = rate_pattern(net);  // m x n
    // negated transpose is the printed 3x2 sign matrix [[-,-],[-,+],[+,0]]
    SignPatternMatrix N = P.negated().transpose();
    CHECK(N.at(0, 0) == SignEntry::NEG);
    CHECK(N.at(0, 1) == SignEntry::NEG);
    CHECK(N.at(1, 0) == SignEntry::NEG);
    CHECK(N.at(1, 1) == SignEntry::POS);
    CHECK(N.at(2, 0) == SignEntry::POS);
    CHECK(N.at(2, 1) == SignEntry::ZERO);

    Network both = parse_network("A <-> A + B\n");
    CHECK(rate_pattern(both).at(0, 0) == SignEntry::ANY);

    Network irr = parse_network("A + B -> B + C\n");
    SignPatternMatrix Pi = rate_pattern(irr);
    CHECK(Pi.at(0, 0) == SignEntry::POS);
    CHECK(Pi.at(0, 1) == SignEntry::POS);  // left occurrence drives the rate
    CHECK(Pi.at(0, 2) == SignEntry::ZERO);
}

TEST_CASE("network predicates") {
    NetworkPredicates basic = network_predicates(load_corpus("two_reversible"));
    CHECK(basic.is_simple);
    CHECK(basic.is_simply_reversible);

    NetworkPredicates loop = network_predicates(load_corpus("catalytic_loop"));
    CHECK_FALSE(loop.is_simple);
    CHECK(loop.is_fully_irreversible);

    NetworkPredicates empty = network_predicates(parse_network(""));
    CHECK(empty.is_simple);
    CHECK(empty.is_simply_reversible);
    CHECK(empty.is_fully_irreversible);
}
