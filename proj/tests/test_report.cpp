#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "crncert/report.hpp"
#include "test_util.hpp"

using namespace crncert;
using testutil::load_corpus;

namespace {

ClaimStatus status_of(const AnalysisReport& r, KineticsClass k, ClaimId c) {
    const ClassClaims& cc = r.claims.by_class.at(k);
    auto it = cc.claims.find(c);
    REQUIRE(it != cc.claims.end());
    return it->second.status;
}

bool has_statement(const AnalysisReport& r, KineticsClass k, const std::string& needle) {
    for (const std::string& s : r.claims.by_class.at(k).statements)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("structural flags on the basic example") {
    StructuralFlags f = structural_flags(load_corpus("two_reversible"));
    CHECK(f.rank == 2);
    CHECK(f.concordance == ConcordanceVerdict::ConcordantPos);
    CHECK(f.accordant);
    CHECK(f.star_single);
    CHECK(f.ssd);
    CHECK(f.pc1);
    CHECK(f.bc1);
    CHECK(f.weakly_reversible);
}

TEST_CASE("strongest claims for an accordant concordant network") {
    AnalysisReport r = analyze(load_corpus("two_reversible"));
    CHECK(status_of(r, KineticsClass::GK, ClaimId::IC1DoublePrime) == ClaimStatus::Holds);
    CHECK(status_of(r, KineticsClass::GK, ClaimId::IC2DoublePrime) == ClaimStatus::Holds);
    // closure: the weaker claims follow
    CHECK(status_of(r, KineticsClass::GK, ClaimId::IC1) == ClaimStatus::Holds);
    CHECK(status_of(r, KineticsClass::MassAction, ClaimId::IC2) == ClaimStatus::Holds);
    CHECK(has_statement(r, KineticsClass::GK,
                        "each stoichiometry class other than {0} contains a unique equilibrium, "
                        "which is positive"));
}

TEST_CASE("mass action rescues a discordant network") {
    AnalysisReport r = analyze(load_corpus("double_binding"));
    CHECK(status_of(r, KineticsClass::GK, ClaimId::IC1) == ClaimStatus::FailsForSomeChoice);
    CHECK(status_of(r, KineticsClass::MassAction, ClaimId::IC1a) == ClaimStatus::Holds);
    CHECK(status_of(r, KineticsClass::MassAction, ClaimId::IC2DoublePrime) == ClaimStatus::Holds);
    CHECK(has_statement(r, KineticsClass::MassAction,
                        "each nontrivial stoichiometry class includes a unique equilibrium, "
                        "which is positive"));
}

TEST_CASE("accordance without concordance") {
    AnalysisReport r = analyze(load_corpus("catalyst_fixed"));
    CHECK(status_of(r, KineticsClass::GK, ClaimId::IC2DoublePrime) == ClaimStatus::Holds);
    CHECK(status_of(r, KineticsClass::GK, ClaimId::IC1DoublePrime) ==
          ClaimStatus::FailsForSomeChoice);
}

TEST_CASE("text report for the negatively concordant network") {
    AnalysisReport r = analyze(load_corpus("autocatalytic"));
    std::string text = render_text(r);
    CHECK(text.find("concordant") != std::string::npos);
    CHECK(text.find("claim IC1'' holds") != std::string::npos);
    CHECK(text.find("fully open system fails to be injective for some choice of rate constants") !=
          std::string::npos);
}

TEST_CASE("json output is deterministic and well formed") {
    Network net = load_corpus("futile_cycle");
    std::string a = render_json(analyze(net));
    std::string b = render_json(analyze(net));
    CHECK(a == b);
    nlohmann::json j = nlohmann::json::parse(a);
    CHECK(j.contains("flags"));
    CHECK(j.contains("claims"));
    CHECK(j["meta"]["tool"] == "crncert");
}

TEST_CASE("kinetics restriction limits the reported classes") {
    AnalyzeOptions opt;
    opt.kinetics = {KineticsClass::MassAction};
    AnalysisReport r = analyze(load_corpus("double_binding"), opt);
    CHECK(r.claims.by_class.size() == 1);
    CHECK(r.claims.by_class.count(KineticsClass::MassAction) == 1);
}

TEST_CASE("empty network yields a minimal valid report") {
    Network net = parse_network("# nothing\n");
    AnalysisReport r;
    CHECK_NOTHROW(r = analyze(net));
    CHECK(r.flags.rank == 0);
    for (const auto& [k, cc] : r.claims.by_class) {
        for (const auto& [c, entry] : cc.claims) CHECK(entry.status == ClaimStatus::NotDetermined);
        CHECK(cc.statements.empty());
    }
    CHECK_NOTHROW(render_text(r));
    nlohmann::json j = nlohmann::json::parse(render_json(r));
    CHECK(j.contains("flags"));
}

TEST_CASE("flag consistency assertions never fire on the corpus") {
    for (const auto& name : testutil::corpus_names())
        CHECK_NOTHROW(structural_flags(load_corpus(name)));
}
