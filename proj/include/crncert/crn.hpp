#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crncert/linalg.hpp"
#include "crncert/signpat.hpp"

namespace crncert {

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(int line, int column, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line(line),
          column(column) {}
};

// species-index -> multiplicity (> 0); empty map is the empty complex.
using Complex = std::map<int, Rat>;

struct Reaction {
    Complex left, right;
    bool reversible = false;
    std::string label;
    bool operator==(const Reaction& o) const {
        return left == o.left && right == o.right && reversible == o.reversible;
    }
};

struct Network {
    std::vector<std::string> species;  // first-occurrence order
    std::vector<Reaction> reactions;   // file order
    bool operator==(const Network& o) const { return species == o.species && reactions == o.reactions; }
};

struct StoichTriple {
    RatMatrix gamma;        // gamma_right - gamma_left
    RatMatrix gamma_left;   // >= 0
    RatMatrix gamma_right;  // >= 0
};

struct NetworkPredicates {
    bool is_simple;             // no species on both sides of one reaction
    bool is_simply_reversible;  // simple and every reaction reversible
    bool is_fully_irreversible;
};

Network parse_network(const std::string& text);
std::string render_network(const Network& net);
std::string render_reaction(const Reaction& r, const Network& net);

StoichTriple stoichiometric_matrices(const Network& net);

// Every reversible reaction replaced in place by its forward+backward pair
// (forward first); irreversible reactions kept as-is.
Network irreversible_expansion(const Network& net);

// m x n sign pattern of Dv under the standing kinetics assumptions:
// irreversible j: POS iff species i on the left, else ZERO;
// reversible j: POS left-only, NEG right-only, ANY both sides, ZERO neither.
SignPatternMatrix rate_pattern(const Network& net);

NetworkPredicates network_predicates(const Network& net);

}  // namespace crncert
