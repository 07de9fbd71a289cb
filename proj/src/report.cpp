#include "crncert/report.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace crncert {

using json = nlohmann::json;

std::string to_string(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::Holds: return "holds";
        case ClaimStatus::FailsForSomeChoice: return "fails_for_some_choice";
        default: return "not_determined";
    }
}

std::string to_string(KineticsClass k) {
    switch (k) {
        case KineticsClass::GK: return "gk";
        case KineticsClass::WGK: return "wgk";
        case KineticsClass::GKPlus: return "gk_plus";
        case KineticsClass::MassAction: return "mass_action";
        default: return "physical_power_law";
    }
}

std::string to_string(ClaimId c) {
    switch (c) {
        case ClaimId::IC1: return "ic1";
        case ClaimId::IC1Prime: return "ic1_prime";
        case ClaimId::IC1DoublePrime: return "ic1_dprime";
        case ClaimId::IC1a: return "ic1a";
        case ClaimId::IC1Minus: return "ic1_minus";
        case ClaimId::IC2: return "ic2";
        case ClaimId::IC2Prime: return "ic2_prime";
        default: return "ic2_dprime";
    }
}

std::string display_name(ClaimId c) {
    switch (c) {
        case ClaimId::IC1: return "IC1";
        case ClaimId::IC1Prime: return "IC1'";
        case ClaimId::IC1DoublePrime: return "IC1''";
        case ClaimId::IC1a: return "IC1a";
        case ClaimId::IC1Minus: return "IC1-";
        case ClaimId::IC2: return "IC2";
        case ClaimId::IC2Prime: return "IC2'";
        default: return "IC2''";
    }
}

std::string display_name(KineticsClass k) {
    switch (k) {
        case KineticsClass::GK: return "general kinetics";
        case KineticsClass::WGK: return "weak general kinetics";
        case KineticsClass::GKPlus: return "positive general kinetics";
        case KineticsClass::MassAction: return "mass action kinetics";
        default: return "physical power-law kinetics";
    }
}

namespace {

const std::vector<KineticsClass> kAllClasses = {KineticsClass::GK, KineticsClass::WGK, KineticsClass::GKPlus,
                                                KineticsClass::MassAction, KineticsClass::PhysicalPowerLaw};

const std::vector<ClaimId> kAllClaims = {ClaimId::IC1,      ClaimId::IC1Prime, ClaimId::IC1DoublePrime,
                                         ClaimId::IC1a,     ClaimId::IC1Minus, ClaimId::IC2,
                                         ClaimId::IC2Prime, ClaimId::IC2DoublePrime};

// entrywise negative part of the expansion matrix
RatMatrix negative_part(const RatMatrix& G) {
    RatMatrix out(G.rows(), G.cols());
    for (int i = 0; i < G.rows(); ++i)
        for (int j = 0; j < G.cols(); ++j)
            if (G.at(i, j) < 0) out.at(i, j) = -G.at(i, j);
    return out;
}

bool is_concordant(ConcordanceVerdict v) {
    return v == ConcordanceVerdict::ConcordantPos || v == ConcordanceVerdict::ConcordantNeg;
}

void check_flag_consistency(const StructuralFlags& f) {
    auto fail = [](const std::string& what) {
        throw std::logic_error("structural flag consistency violated: " + what);
    };
    if (f.accordant && f.concordance != ConcordanceVerdict::StructurallyDiscordant && !is_concordant(f.concordance))
        fail("accordant non-degenerate network must be concordant");
    if (f.weakly_reversible && f.accordant && !is_concordant(f.concordance))
        fail("weakly reversible accordant network must be concordant");
    if (f.weakly_reversible && is_concordant(f.concordance) && !f.pc2)
        fail("weakly reversible concordant network must satisfy PC2");
    if (f.is_simply_reversible && f.accordant != f.ssd)
        fail("simply reversible: accordance must match SSD");
    if (f.is_simply_reversible && (f.concordance == ConcordanceVerdict::ConcordantPos) != f.r_ssd)
        fail("simply reversible: positive concordance must match rank-SSD");
    if (f.semiaccordant && f.normal && f.semiconcordance != ProductSign::Pos)
        fail("semiaccordant normal network must be positively semiconcordant");
    if (f.star_single && !f.accordant) fail("Condition (*) implies accordance");
}

// ---------------------------------------------------------------------------
// Rule table: premises over the flag set, claim-status conclusions.
// ---------------------------------------------------------------------------

struct RuleEffect {
    KineticsClass cls;
    ClaimId claim;
    ClaimStatus status;
};

struct Rule {
    std::string id;
    bool (*premise)(const StructuralFlags&);
    std::vector<RuleEffect> effects;
};

const std::vector<Rule>& rule_table() {
    static const std::vector<Rule> rules = {
        {"rule:concordance-injectivity",
         [](const StructuralFlags& f) { return is_concordant(f.concordance); },
         {{KineticsClass::GK, ClaimId::IC1DoublePrime, ClaimStatus::Holds},
          {KineticsClass::WGK, ClaimId::IC1, ClaimStatus::Holds},
          {KineticsClass::GKPlus, ClaimId::IC1, ClaimStatus::Holds},
          {KineticsClass::PhysicalPowerLaw, ClaimId::IC1, ClaimStatus::Holds}}},
        {"rule:discordance-noninjectivity",
         [](const StructuralFlags& f) { return !is_concordant(f.concordance); },
         {{KineticsClass::GK, ClaimId::IC1DoublePrime, ClaimStatus::FailsForSomeChoice},
          {KineticsClass::WGK, ClaimId::IC1, ClaimStatus::FailsForSomeChoice},
          {KineticsClass::GKPlus, ClaimId::IC1, ClaimStatus::FailsForSomeChoice},
          {KineticsClass::PhysicalPowerLaw, ClaimId::IC1, ClaimStatus::FailsForSomeChoice}}},
        {"rule:accordance-open-injectivity",
         [](const StructuralFlags& f) { return f.accordant; },
         {{KineticsClass::GK, ClaimId::IC2DoublePrime, ClaimStatus::Holds},
          {KineticsClass::WGK, ClaimId::IC2, ClaimStatus::Holds},
          {KineticsClass::GKPlus, ClaimId::IC2, ClaimStatus::Holds},
          {KineticsClass::PhysicalPowerLaw, ClaimId::IC2, ClaimStatus::Holds}}},
        {"rule:discordance-open-noninjectivity",
         [](const StructuralFlags& f) { return !f.accordant; },
         {{KineticsClass::GK, ClaimId::IC2DoublePrime, ClaimStatus::FailsForSomeChoice},
          {KineticsClass::WGK, ClaimId::IC2, ClaimStatus::FailsForSomeChoice},
          {KineticsClass::GKPlus, ClaimId::IC2, ClaimStatus::FailsForSomeChoice},
          {KineticsClass::PhysicalPowerLaw, ClaimId::IC2, ClaimStatus::FailsForSomeChoice}}},
        {"rule:reactant-products-mass-action-injectivity",
         [](const StructuralFlags& f) {
             return f.semiconcordance == ProductSign::Pos || f.semiconcordance == ProductSign::Neg;
         },
         {{KineticsClass::MassAction, ClaimId::IC1a, ClaimStatus::Holds}}},
        {"rule:reactant-products-mass-action-noninjectivity",
         [](const StructuralFlags& f) {
             return f.semiconcordance == ProductSign::Mixed || f.semiconcordance == ProductSign::Zero;
         },
         {{KineticsClass::MassAction, ClaimId::IC1a, ClaimStatus::FailsForSomeChoice}}},
        {"rule:reactant-compatibility-mass-action-open-injectivity",
         [](const StructuralFlags& f) { return f.semiaccordant; },
         {{KineticsClass::MassAction, ClaimId::IC2DoublePrime, ClaimStatus::Holds}}},
        {"rule:reactant-compatibility-mass-action-open-noninjectivity",
         [](const StructuralFlags& f) { return !f.semiaccordant; },
         {{KineticsClass::MassAction, ClaimId::IC2, ClaimStatus::FailsForSomeChoice}}},
    };
    return rules;
}

struct ClaimTable {
    // status + rule per (class, claim)
    std::map<std::pair<KineticsClass, ClaimId>, ClaimEntry> t;

    void set(KineticsClass k, ClaimId c, ClaimStatus s, const std::string& rule) {
        auto& e = t[{k, c}];
        if (e.status == ClaimStatus::NotDetermined) {
            e.status = s;
            e.rule = rule;
        } else if (e.status != s) {
            throw std::logic_error("claim conflict at " + to_string(k) + "." + to_string(c));
        }
    }
    ClaimStatus get(KineticsClass k, ClaimId c) const {
        auto it = t.find({k, c});
        return it == t.end() ? ClaimStatus::NotDetermined : it->second.status;
    }
};

// Closure along the claim implications (IC1'' => IC1' => IC1, IC1a => IC1',
// IC2'' => IC2' => IC2, IC2 => IC1-) and the kinetics-class inclusions
// (mass action < physical power-law < weak general < positive general <
// general).  Holds flows to weaker claims and smaller classes; failure flows
// the opposite way.
void close_claims(ClaimTable& tab) {
    static const std::vector<std::pair<ClaimId, ClaimId>> arrows = {
        {ClaimId::IC1DoublePrime, ClaimId::IC1Prime}, {ClaimId::IC1Prime, ClaimId::IC1},
        {ClaimId::IC1a, ClaimId::IC1Prime},           {ClaimId::IC2DoublePrime, ClaimId::IC2Prime},
        {ClaimId::IC2Prime, ClaimId::IC2},            {ClaimId::IC2, ClaimId::IC1Minus}};
    static const std::vector<std::pair<KineticsClass, KineticsClass>> subclasses = {
        {KineticsClass::MassAction, KineticsClass::PhysicalPowerLaw},
        {KineticsClass::PhysicalPowerLaw, KineticsClass::WGK},
        {KineticsClass::WGK, KineticsClass::GKPlus},
        {KineticsClass::GKPlus, KineticsClass::GK}};
    const std::string rule = "rule:implication-closure";
    bool changed = true;
    while (changed) {
        changed = false;
        auto propagate = [&](KineticsClass k, ClaimId c, ClaimStatus s) {
            if (tab.get(k, c) == ClaimStatus::NotDetermined) {
                tab.set(k, c, s, rule);
                changed = true;
            }
        };
        for (KineticsClass k : kAllClasses)
            for (const auto& [strong, weak] : arrows) {
                if (tab.get(k, strong) == ClaimStatus::Holds) propagate(k, weak, ClaimStatus::Holds);
                if (tab.get(k, weak) == ClaimStatus::FailsForSomeChoice)
                    propagate(k, strong, ClaimStatus::FailsForSomeChoice);
            }
        for (const auto& [sub, super] : subclasses)
            for (ClaimId c : kAllClaims) {
                if (tab.get(super, c) == ClaimStatus::Holds) propagate(sub, c, ClaimStatus::Holds);
                if (tab.get(sub, c) == ClaimStatus::FailsForSomeChoice)
                    propagate(super, c, ClaimStatus::FailsForSomeChoice);
            }
    }
    // machine-check monotonicity
    for (KineticsClass k : kAllClasses)
        for (const auto& [strong, weak] : arrows)
            if (tab.get(k, strong) == ClaimStatus::Holds && tab.get(k, weak) == ClaimStatus::FailsForSomeChoice)
                throw std::logic_error("claim monotonicity violated at " + to_string(k));
}

std::vector<std::string> class_statements(const StructuralFlags& f, const ClaimTable& tab, KineticsClass k) {
    std::vector<std::string> out;
    if (tab.get(k, ClaimId::IC1Prime) == ClaimStatus::Holds) {
        if (f.pc1 && f.bc1)
            out.push_back("each stoichiometry class other than {0} contains a unique equilibrium, which is positive");
        else if (f.pc2 && f.bc1)
            out.push_back("each nontrivial stoichiometry class includes a unique equilibrium, which is positive");
        else if (f.pc1)
            out.push_back("each stoichiometry class other than {0} contains at most one equilibrium, which is positive if it exists");
        else if (f.pc2)
            out.push_back("each nontrivial stoichiometry class includes at most one equilibrium, which is positive if it exists");
    }
    bool powerlaw_class = (k == KineticsClass::GK || k == KineticsClass::PhysicalPowerLaw);
    if (powerlaw_class && !is_concordant(f.concordance) && f.admits_positive_equilibria)
        out.push_back("admits multiple positive equilibria on some stoichiometry class for some choice of kinetics");
    if (powerlaw_class && !f.accordant)
        out.push_back("the fully open system fails to be injective for some choice of rate constants");
    return out;
}

}  // namespace

StructuralFlags structural_flags(const Network& net) {
    StructuralFlags f;
    if (net.species.empty() || net.reactions.empty()) {
        // degenerate network: nothing to decide, report safe defaults
        f.concordance = ConcordanceVerdict::StructurallyDiscordant;
        f.bc1 = true;
        f.pc1 = f.pc2 = true;
        f.weakly_reversible = true;
        NetworkPredicates np = network_predicates(net);
        f.is_simple = np.is_simple;
        f.is_simply_reversible = np.is_simply_reversible;
        return f;
    }
    StoichTriple st = stoichiometric_matrices(net);
    StoichTriple ste = stoichiometric_matrices(irreversible_expansion(net));
    f.rank = rank(st.gamma);
    f.concordance = concordance(net).verdict;
    f.accordant = accordance(net).accordant;
    f.semiconcordance = semiconcordance(net);
    f.semiaccordant = semiaccordance(net);
    f.normal = is_normal(net);
    f.ssd = is_SSD(st.gamma).ssd;
    f.r_ssd = is_r_SSD(st.gamma, f.rank);
    RatMatrix gminus = negative_part(ste.gamma);
    f.wsd = m_accordance(net, gminus);
    ProductSign ws = m_concordance(net, gminus);
    f.r_strong_wsd = ws == ProductSign::Pos;
    f.r_strong_neg_wsd = ws == ProductSign::Neg;
    f.weakly_reversible = is_weakly_reversible(complex_digraph(net));
    f.star_single = condition_star(dsr_graph(net, DSRMode::ReversibleAsSingle)).satisfied;
    f.star_pairs = condition_star(dsr_graph(net, DSRMode::ReversibleAsPairs)).satisfied;
    f.bc1 = bounded_classes(net);
    f.admits_positive_equilibria = admits_positive_equilibria(net);
    PersistenceFlags pf = persistence_flags(net);
    f.pc1 = pf.pc1;
    f.pc2 = pf.pc2;
    NetworkPredicates np = network_predicates(net);
    f.is_simple = np.is_simple;
    f.is_simply_reversible = np.is_simply_reversible;
    check_flag_consistency(f);
    return f;
}

AnalysisReport analyze(const Network& net, const AnalyzeOptions& options) {
    auto start = std::chrono::steady_clock::now();
    AnalysisReport rep;
    rep.net = net;
    rep.flags = structural_flags(net);

    ClaimTable tab;
    bool degenerate = net.species.empty() || net.reactions.empty();
    if (!degenerate) {
        for (const Rule& r : rule_table())
            if (r.premise(rep.flags))
                for (const RuleEffect& e : r.effects) tab.set(e.cls, e.claim, e.status, r.id);
        close_claims(tab);
    }

    std::vector<KineticsClass> classes = options.kinetics.empty() ? kAllClasses : options.kinetics;
    for (KineticsClass k : classes) {
        ClassClaims cc;
        for (ClaimId c : kAllClaims) {
            auto it = tab.t.find({k, c});
            cc.claims[c] = (it == tab.t.end()) ? ClaimEntry{} : it->second;
        }
        if (!degenerate) cc.statements = class_statements(rep.flags, tab, k);
        rep.claims.by_class[k] = cc;
    }

    if (options.witnesses && !degenerate) {
        StoichTriple ste = stoichiometric_matrices(irreversible_expansion(net));
        if (!is_concordant(rep.flags.concordance) && rep.flags.admits_positive_equilibria) {
            try {
                rep.witnesses.class_mpe = class_multistationarity_witness(net, 1e-9, options.seed);
            } catch (const ConstructionFailed&) {
            }
        }
        if (!rep.flags.semiaccordant) {
            try {
                rep.witnesses.open_collision = open_collision_witness(net, ste.gamma_left, 1e-9, options.seed);
            } catch (const ConstructionFailed&) {
            }
            rep.witnesses.incompatibility =
                strong_incompatibility_search(net, ste.gamma_left, options.budget, options.seed);
            if (rep.witnesses.incompatibility) {
                try {
                    rep.witnesses.open_mpe =
                        open_multistationarity_witness(net, *rep.witnesses.incompatibility, ste.gamma_left);
                } catch (const ConstructionFailed&) {
                }
            }
        }
    }
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

namespace {

std::string yn(bool b) { return b ? "yes" : "no"; }

std::string concordance_phrase(ConcordanceVerdict v) {
    switch (v) {
        case ConcordanceVerdict::ConcordantPos: return "concordant (positively)";
        case ConcordanceVerdict::ConcordantNeg: return "concordant (negatively)";
        case ConcordanceVerdict::StructurallyDiscordant: return "structurally discordant";
        default: return "discordant";
    }
}

std::string product_sign_str(ProductSign s) {
    switch (s) {
        case ProductSign::Pos: return "pos";
        case ProductSign::Neg: return "neg";
        case ProductSign::Zero: return "zero";
        default: return "mixed";
    }
}

std::string concordance_key(ConcordanceVerdict v) {
    switch (v) {
        case ConcordanceVerdict::ConcordantPos: return "concordant_pos";
        case ConcordanceVerdict::ConcordantNeg: return "concordant_neg";
        case ConcordanceVerdict::StructurallyDiscordant: return "structurally_discordant";
        default: return "discordant";
    }
}

json kinetics_json(const PowerLawKinetics& k) {
    return json{{"exponents", k.exponents}, {"rate_constants", k.rate_constants}};
}

}  // namespace

std::string render_text(const AnalysisReport& r) {
    std::ostringstream os;
    os << "network: " << r.net.species.size() << " species, " << r.net.reactions.size() << " reactions\n";
    for (const Reaction& rx : r.net.reactions) os << "  " << rx.label << ": " << render_reaction(rx, r.net) << "\n";
    const StructuralFlags& f = r.flags;
    os << "rank " << f.rank << "; weakly reversible: " << yn(f.weakly_reversible) << "; simple: " << yn(f.is_simple)
       << "; simply reversible: " << yn(f.is_simply_reversible) << "\n";
    os << concordance_phrase(f.concordance) << "; accordant: " << yn(f.accordant) << "\n";
    os << "semiconcordance: " << product_sign_str(f.semiconcordance) << "; semiaccordant: " << yn(f.semiaccordant)
       << "; normal: " << yn(f.normal) << "\n";
    os << "SSD: " << yn(f.ssd) << "; " << f.rank << "-SSD: " << yn(f.r_ssd) << "\n";
    os << "WSD: " << yn(f.wsd) << "; " << f.rank << "-strongly WSD: " << yn(f.r_strong_wsd) << "; " << f.rank
       << "-strongly negatively WSD: " << yn(f.r_strong_neg_wsd) << "\n";
    os << "condition (*): " << (f.star_single ? "satisfied" : "violated") << " (reversible-as-single), "
       << (f.star_pairs ? "satisfied" : "violated") << " (expanded pairs)\n";
    os << "bounded classes (BC1): " << yn(f.bc1)
       << "; admits positive equilibria: " << yn(f.admits_positive_equilibria) << "\n";
    os << "PC1: " << yn(f.pc1) << "; PC2: " << yn(f.pc2) << "\n";
    os << "claims:\n";
    for (const auto& [k, cc] : r.claims.by_class) {
        for (const auto& [c, entry] : cc.claims) {
            if (entry.status == ClaimStatus::NotDetermined) continue;
            os << "  " << display_name(k) << ": claim " << display_name(c)
               << (entry.status == ClaimStatus::Holds ? " holds" : " fails for some choice of rate constants")
               << " [" << entry.rule << "]\n";
        }
        for (const std::string& s : cc.statements) os << "  " << display_name(k) << ": " << s << "\n";
    }
    if (r.witnesses.class_mpe)
        os << "witness: two positive equilibria on one stoichiometry class (residuals "
           << r.witnesses.class_mpe->residual_x << ", " << r.witnesses.class_mpe->residual_y << ")\n";
    if (r.witnesses.open_collision)
        os << "witness: open-system collision (residual " << r.witnesses.open_collision->residual << ")\n";
    if (r.witnesses.open_mpe)
        os << "witness: two positive equilibria of the open system (residuals " << r.witnesses.open_mpe->residual_x
           << ", " << r.witnesses.open_mpe->residual_y << ")\n";
    return os.str();
}

std::string render_json(const AnalysisReport& r) {
    json j;
    json net;
    net["species"] = r.net.species;
    std::vector<std::string> rxns;
    for (const Reaction& rx : r.net.reactions) rxns.push_back(render_reaction(rx, r.net));
    net["reactions"] = rxns;
    j["network"] = net;

    const StructuralFlags& f = r.flags;
    json flags;
    flags["rank"] = f.rank;
    flags["concordance"] = concordance_key(f.concordance);
    flags["accordant"] = f.accordant;
    flags["semiconcordance"] = product_sign_str(f.semiconcordance);
    flags["semiaccordant"] = f.semiaccordant;
    flags["normal"] = f.normal;
    flags["ssd"] = f.ssd;
    flags["r_ssd"] = f.r_ssd;
    flags["wsd"] = f.wsd;
    flags["r_strong_wsd"] = f.r_strong_wsd;
    flags["r_strong_neg_wsd"] = f.r_strong_neg_wsd;
    flags["weakly_reversible"] = f.weakly_reversible;
    flags["condition_star_single"] = f.star_single;
    flags["condition_star_pairs"] = f.star_pairs;
    flags["bc1"] = f.bc1;
    flags["admits_positive_equilibria"] = f.admits_positive_equilibria;
    flags["pc1"] = f.pc1;
    flags["pc2"] = f.pc2;
    flags["is_simple"] = f.is_simple;
    flags["is_simply_reversible"] = f.is_simply_reversible;
    j["flags"] = flags;

    json claims;
    for (const auto& [k, cc] : r.claims.by_class) {
        json ck;
        for (const auto& [c, entry] : cc.claims) {
            json ce;
            ce["status"] = to_string(entry.status);
            if (!entry.rule.empty()) ce["rule"] = entry.rule;
            ck[to_string(c)] = ce;
        }
        ck["statements"] = cc.statements;
        claims[to_string(k)] = ck;
    }
    j["claims"] = claims;

    json w;
    if (r.witnesses.class_mpe) {
        const auto& m = *r.witnesses.class_mpe;
        w["class_mpe"] = {{"kinetics", kinetics_json(m.kinetics)}, {"x", m.x},
                          {"y", m.y},                              {"residual_x", m.residual_x},
                          {"residual_y", m.residual_y},            {"class_offset", m.class_offset}};
    }
    if (r.witnesses.open_collision) {
        const auto& m = *r.witnesses.open_collision;
        w["open_collision"] = {{"kinetics", kinetics_json(m.kinetics)},
                               {"x", m.x},
                               {"y", m.y},
                               {"residual", m.residual},
                               {"class_offset", m.class_offset}};
    }
    if (r.witnesses.incompatibility) {
        const auto& c = *r.witnesses.incompatibility;
        std::vector<std::string> d;
        for (const Rat& v : c.d) d.push_back(to_string(v));
        w["incompatibility"] = {{"d", d}, {"det", to_string(c.det_value)}};
    }
    if (r.witnesses.open_mpe) {
        const auto& m = *r.witnesses.open_mpe;
        w["open_mpe"] = {{"kinetics", kinetics_json(m.kinetics)}, {"outflow", m.outflow}, {"inflow", m.inflow},
                         {"x", m.x},                              {"y", m.y},             {"residual_x", m.residual_x},
                         {"residual_y", m.residual_y}};
    }
    j["witnesses"] = w;
    j["meta"] = {{"tool", "crncert"}, {"version", "0.1.0"}};
    return j.dump(2) + "\n";
}

}  // namespace crncert
