#pragma once

#include <optional>
#include <vector>

#include "crncert/crn.hpp"
#include "crncert/linalg.hpp"

namespace crncert {

// Rational linear feasibility problem over free variables: each row is
// coeffs . x REL rhs with REL either equality or >=.
struct LinearRow {
    std::vector<Rat> coeffs;
    Rat rhs;
    bool equality;  // false: >=
};

struct LinearSystem {
    int num_vars = 0;
    std::vector<LinearRow> rows;
    void add(const std::vector<Rat>& coeffs, const Rat& rhs, bool equality) {
        rows.push_back({coeffs, rhs, equality});
    }
};

// Exact Phase-I simplex (Bland's rule); returns a feasible point or nullopt.
std::optional<std::vector<Rat>> solve_feasibility(const LinearSystem& sys);

// True iff there is p with Gamma^t p = 0 and p >= 1 componentwise
// (stoichiometry classes bounded).
bool bounded_classes(const Network& net);

// True iff there is z with Gbar z = 0 and z >= 1 componentwise.
bool admits_positive_equilibria(const Network& net);
std::optional<std::vector<Rat>> positive_kernel_vector(const RatMatrix& A);

struct Siphon {
    IndexSet species;
    bool minimal = false;
    bool critical = false;
    std::optional<std::vector<Rat>> psemiflow;  // nonnegative left-kernel vector supported in the set
};

// True iff sigma satisfies the siphon closure rule on the irreversible
// expansion: every reaction producing a member has a member among its
// reactants.
bool is_siphon(const Network& net, const IndexSet& sigma);

// All inclusion-minimal siphons, with criticality computed.
std::vector<Siphon> minimal_siphons(const Network& net);

// Exact LP criticality test; also computes the P-semiflow sufficient condition
// for non-criticality and asserts consistency.  Throws if sigma is not a siphon.
bool is_critical_siphon(const Network& net, const IndexSet& sigma,
                        std::optional<std::vector<Rat>>* psemiflow_out = nullptr);

struct PersistenceFlags {
    bool pc1 = false;
    bool pc2 = false;
};

PersistenceFlags persistence_flags(const Network& net);

}  // namespace crncert
