#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "crncert/crn.hpp"
#include "crncert/linalg.hpp"
#include "crncert/signpat.hpp"

namespace crncert {

enum class ConcordanceVerdict { ConcordantPos, ConcordantNeg, StructurallyDiscordant, Discordant };

struct ConcordanceResult {
    ConcordanceVerdict verdict;
    // For Discordant: an r x r pair whose minor product can be negative while
    // another can be positive.
    std::optional<std::pair<IndexSet, IndexSet>> witness;
};

// Sign classification of the rank-sized minor products of the stoichiometric
// matrix against the derivative pattern of the rates.
ConcordanceResult concordance(const Network& net);

struct AccordanceResult {
    bool accordant;
    // On failure: (size, alpha, beta) of a minor product that can be negative.
    std::optional<std::tuple<int, IndexSet, IndexSet>> witness;
};

AccordanceResult accordance(const Network& net);

enum class ProductSign { Pos, Neg, Zero, Mixed };

// Sign classification of {Gbar[a|b] * (-M)[a|b]} over rank-sized index pairs,
// Gbar the irreversible-expansion stoichiometric matrix.
ProductSign m_concordance(const Network& net, const RatMatrix& M);

// True iff Gbar[a|b] * (-M)[a|b] >= 0 for all square index pairs of all sizes.
bool m_accordance(const Network& net, const RatMatrix& M);

ProductSign semiconcordance(const Network& net);  // M = left matrix of the expansion
bool semiaccordance(const Network& net);
bool is_normal(const Network& net);  // semiconcordance product vector nonzero

// Positive-side-only decision for weakly reversible networks; must agree with
// concordance().  Throws if the network is not weakly reversible.
ConcordanceResult weakly_reversible_shortcut(const Network& net);

// Positive integer diagonal D (one entry per expanded reaction, the number of
// elementary cycles of the complex digraph through that arc) such that the
// reduced determinant of -Gbar * D * Gbar_l^t over im Gbar is positive;
// verified exactly.  Throws if the network is not weakly reversible.
std::vector<Rat> wr_cycle_scaling(const Network& net);

struct IncompatibilityCertificate {
    std::vector<Rat> d;             // positive diagonal, dimension m+n
    Rat det_value;                  // det([Gbar|-I] D [-M|-I]^t) < 0
    std::vector<Rat> constraint;    // [Gbar|-I] D 1 <= 0 componentwise
};

// Randomized search for a certificate that -M is strongly incompatible with
// the expansion matrix.  Returns a certificate verified in exact arithmetic,
// or nullopt (unknown) when the budget is exhausted.
std::optional<IncompatibilityCertificate> strong_incompatibility_search(
    const Network& net, const RatMatrix& M, int budget = 10000, unsigned seed = 1);

}  // namespace crncert
