#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crncert/signpat.hpp"
#include "test_util.hpp"

using namespace crncert;
using testutil::random_matrix;

namespace {

SignPatternMatrix pat(const std::vector<std::vector<SignEntry>>& rows) {
    SignPatternMatrix P(int(rows.size()), int(rows[0].size()));
    for (int i = 0; i < P.rows(); ++i)
        for (int j = 0; j < P.cols(); ++j) P.at(i, j) = rows[i][j];
    return P;
}

constexpr SignEntry P = SignEntry::POS, N = SignEntry::NEG, Z = SignEntry::ZERO, A = SignEntry::ANY;

}  // namespace

TEST_CASE("minor sign sets") {
    SignSet all = minor_sign_set(pat({{P, P}, {P, P}}), {0, 1}, {0, 1});
    CHECK(all.can_pos);
    CHECK(all.can_neg);
    CHECK(all.can_zero);

    SignSet pos = minor_sign_set(pat({{P, Z}, {A, P}}), {0, 1}, {0, 1});
    CHECK(pos == SignSet{false, false, true});

    SignSet pos2 = minor_sign_set(pat({{P, N}, {P, P}}), {0, 1}, {0, 1});
    CHECK(pos2 == SignSet{false, false, true});

    SignSet zero = minor_sign_set(pat({{Z, Z}, {P, P}}), {0, 1}, {0, 1});
    CHECK(zero == SignSet{false, true, false});

    CHECK_THROWS(minor_sign_set(pat({{P, P}}), {0}, {0, 1}));
}

TEST_CASE("square pattern classification") {
    CHECK(classify_square_pattern(SignPatternMatrix::pattern_of(
              RatMatrix::from_int_rows({{-1, -2}, {-1, 1}}))) == PatternClass::SNS_NEG);
    CHECK(classify_square_pattern(pat({{Z, Z}, {P, N}})) == PatternClass::SIGN_SINGULAR);
    CHECK(classify_square_pattern(pat({{P, P}, {P, P}})) == PatternClass::MIXED);
    CHECK_THROWS(classify_square_pattern(pat({{A, P}, {P, P}})));
}

TEST_CASE("SSD family on known matrices") {
    // A+B <-> C, 2A <-> B
    RatMatrix basic = RatMatrix::from_int_rows({{-1, -2}, {-1, 1}, {1, 0}});
    CHECK(is_SSD(basic).ssd);

    // A+B <-> C, 2B <-> C+D, C <-> 0: 3-SSD but not SSD
    RatMatrix weaker = RatMatrix::from_int_rows({{-1, 0, 0}, {-1, -2, 0}, {1, 1, -1}, {0, 1, 0}});
    SSDResult rw = is_SSD(weaker);
    CHECK_FALSE(rw.ssd);
    REQUIRE(rw.witness.has_value());
    // the witness submatrix really is nonsingular and not sign nonsingular
    auto [wa, wb] = *rw.witness;
    CHECK(minor(weaker, wa, wb) != 0);
    SignSet ws = minor_sign_set(SignPatternMatrix::pattern_of(weaker.submatrix(wa, wb)),
                                {0, 1}, {0, 1});
    CHECK(ws.can_pos);
    CHECK(ws.can_neg);
    CHECK(is_r_SSD(weaker, 3));

    // A+B <-> C, 2A+B <-> D: neither SSD nor 2-SSD
    RatMatrix dbl = RatMatrix::from_int_rows({{-1, -2}, {-1, -1}, {1, 0}, {0, 1}});
    CHECK_FALSE(is_SSD(dbl).ssd);
    CHECK_FALSE(is_r_SSD(dbl, 2));

    CHECK(is_r_SSD(dbl, 1));  // 1x1 submatrices are always singular or SNS
}

TEST_CASE("SSD implies r-SSD for every size") {
    std::mt19937 rng(17);
    int found_ssd = 0;
    for (int t = 0; t < 200; ++t) {
        RatMatrix M = random_matrix(rng, 2 + t % 3, 2 + (t / 2) % 2, 2);
        if (!is_SSD(M).ssd) continue;
        ++found_ssd;
        for (int r = 1; r <= std::min(M.rows(), M.cols()); ++r) CHECK(is_r_SSD(M, r));
    }
    CHECK(found_ssd > 0);
}

TEST_CASE("pattern convexity: pos and neg achievable implies zero achievable") {
    std::mt19937 rng(19);
    std::uniform_int_distribution<int> e(0, 3), dim(1, 3);
    const SignEntry entries[4] = {Z, P, N, A};
    for (int t = 0; t < 200; ++t) {
        int k = dim(rng);
        SignPatternMatrix Q(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) Q.at(i, j) = entries[e(rng)];
        IndexSet full(k);
        for (int i = 0; i < k; ++i) full[i] = i;
        SignSet s = minor_sign_set(Q, full, full);
        CHECK((s.can_pos || s.can_neg || s.can_zero));
        if (s.can_pos && s.can_neg) CHECK(s.can_zero);
    }
}

TEST_CASE("classification consistency with concrete determinants") {
    std::mt19937 rng(23);
    for (int t = 0; t < 200; ++t) {
        int k = 2 + t % 2;
        RatMatrix M = random_matrix(rng, k, k, 3);
        PatternClass c = classify_square_pattern(SignPatternMatrix::pattern_of(M));
        Rat d = determinant(M);
        if (c == PatternClass::SNS_POS) CHECK(d > 0);
        if (c == PatternClass::SNS_NEG) CHECK(d < 0);
        if (c == PatternClass::SIGN_SINGULAR) CHECK(d == 0);
    }
}
