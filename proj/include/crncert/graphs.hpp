#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crncert/crn.hpp"
#include "crncert/linalg.hpp"

namespace crncert {

struct ComplexDigraph {
    std::vector<Complex> vertices;           // distinct complexes, first-occurrence order
    std::vector<std::pair<int, int>> arcs;   // (source vertex, target vertex), one per irreversible reaction
    RatMatrix Y;                              // n x |vertices|, complex multiplicities
    RatMatrix theta;                          // |vertices| x |arcs| signed incidence; Y * theta = expanded Gamma
    std::vector<std::string> species;
};

ComplexDigraph complex_digraph(const Network& net);

bool is_weakly_reversible(const ComplexDigraph& g);

// Number of elementary directed cycles through each arc.
std::vector<long> arc_cycle_counts(const ComplexDigraph& g);

enum class EdgeDir { Undirected, SpeciesToReaction, ReactionToSpecies };

struct DSREdge {
    int species;                 // species vertex index
    int reaction;                // reaction vertex index
    int sign;                    // +1 or -1
    std::optional<Rat> label;    // nullopt encodes the infinite label
    EdgeDir dir;
};

struct DSRGraph {
    std::vector<std::string> species_names;
    int n_reactions = 0;
    std::vector<DSREdge> edges;
};

enum class DSRMode { ReversibleAsSingle, ReversibleAsPairs };

DSRGraph dsr_graph(const Network& net, DSRMode mode = DSRMode::ReversibleAsSingle);

// SR graph of a matrix: the DSR graph of the pair (A, A^t); all edges
// undirected with labels |A_ij|.
DSRGraph sr_graph(const RatMatrix& A);

struct DSRCycle {
    std::vector<int> vertices;   // closed walk v0..v_{k-1}, distinct vertices (species i -> i; reaction j -> n+j)
    std::vector<int> edge_ids;   // edge_ids[t] joins vertices[t] and vertices[(t+1)%k]
    std::vector<bool> forward;   // true if edge traversed species->reaction
};

std::vector<DSRCycle> enumerate_cycles(const DSRGraph& g);

bool is_e_cycle(const DSRGraph& g, const DSRCycle& c);
bool is_s_cycle(const DSRGraph& g, const DSRCycle& c);
bool has_s_to_r_intersection(const DSRGraph& g, const DSRCycle& a, const DSRCycle& b);

struct StarViolation {
    enum Kind { ECycleNotSCycle, ECyclePairSRIntersection } kind;
    DSRCycle first;
    std::optional<DSRCycle> second;
};

struct StarVerdict {
    bool satisfied;
    std::optional<StarViolation> violation;
};

StarVerdict condition_star(const DSRGraph& g);

std::string export_dot(const DSRGraph& g);
std::string export_dot(const ComplexDigraph& g);

}  // namespace crncert
