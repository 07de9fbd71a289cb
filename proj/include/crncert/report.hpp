#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crncert/concord.hpp"
#include "crncert/crn.hpp"
#include "crncert/feasibility.hpp"
#include "crncert/graphs.hpp"
#include "crncert/witness.hpp"

namespace crncert {

enum class ClaimStatus { Holds, FailsForSomeChoice, NotDetermined };

enum class KineticsClass { GK, WGK, GKPlus, MassAction, PhysicalPowerLaw };

enum class ClaimId { IC1, IC1Prime, IC1DoublePrime, IC1a, IC1Minus, IC2, IC2Prime, IC2DoublePrime };

std::string to_string(ClaimStatus s);
std::string to_string(KineticsClass k);  // json key, e.g. "gk_plus"
std::string to_string(ClaimId c);        // json key, e.g. "ic1_dprime"
std::string display_name(ClaimId c);     // e.g. "IC1''"
std::string display_name(KineticsClass k);

struct StructuralFlags {
    int rank = 0;
    ConcordanceVerdict concordance = ConcordanceVerdict::Discordant;
    bool accordant = false;
    ProductSign semiconcordance = ProductSign::Zero;
    bool semiaccordant = false;
    bool normal = false;
    bool ssd = false;
    bool r_ssd = false;
    bool wsd = false;               // expansion matrix vs its negative part
    bool r_strong_wsd = false;      // rank-size products all >= 0, some > 0
    bool r_strong_neg_wsd = false;
    bool weakly_reversible = false;
    bool star_single = false;  // Condition (*), reversible reactions as one vertex
    bool star_pairs = false;   // Condition (*) on the expansion
    bool bc1 = false;          // bounded stoichiometry classes
    bool admits_positive_equilibria = false;
    bool pc1 = false;
    bool pc2 = false;
    bool is_simple = false;
    bool is_simply_reversible = false;
};

struct ClaimEntry {
    ClaimStatus status = ClaimStatus::NotDetermined;
    std::string rule;  // rule-table identifier
};

struct ClassClaims {
    std::map<ClaimId, ClaimEntry> claims;
    std::vector<std::string> statements;  // equilibrium statements
};

struct ClaimSet {
    std::map<KineticsClass, ClassClaims> by_class;
};

struct WitnessBundle {
    std::optional<EquilibriaPairWitness> class_mpe;
    std::optional<CollisionWitness> open_collision;
    std::optional<IncompatibilityCertificate> incompatibility;
    std::optional<OpenSystemWitness> open_mpe;
};

struct AnalyzeOptions {
    std::vector<KineticsClass> kinetics;  // empty = all five
    bool witnesses = false;
    unsigned seed = 1;
    int budget = 10000;
};

struct AnalysisReport {
    Network net;
    StructuralFlags flags;
    ClaimSet claims;
    WitnessBundle witnesses;
    double elapsed_seconds = 0.0;  // informational; excluded from structured output
};

// All structural tests; throws std::logic_error if a cross-check invariant of
// the flag set fails.
StructuralFlags structural_flags(const Network& net);

AnalysisReport analyze(const Network& net, const AnalyzeOptions& options = {});

std::string render_text(const AnalysisReport& report);
std::string render_json(const AnalysisReport& report);

}  // namespace crncert
