#pragma once

#include <optional>
#include <vector>

#include "crncert/linalg.hpp"

namespace crncert {

enum class SignEntry { ZERO, POS, NEG, ANY };

inline SignEntry negate(SignEntry s) {
    switch (s) {
        case SignEntry::POS: return SignEntry::NEG;
        case SignEntry::NEG: return SignEntry::POS;
        default: return s;
    }
}

inline SignEntry sign_of(const Rat& x) {
    if (x > 0) return SignEntry::POS;
    if (x < 0) return SignEntry::NEG;
    return SignEntry::ZERO;
}

class SignPatternMatrix {
public:
    SignPatternMatrix() : rows_(0), cols_(0) {}
    SignPatternMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols, SignEntry::ZERO) {}
    static SignPatternMatrix pattern_of(const RatMatrix& A);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    SignEntry& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
    SignEntry at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

    SignPatternMatrix transpose() const;
    SignPatternMatrix negated() const;
    SignPatternMatrix submatrix(const IndexSet& rows, const IndexSet& cols) const;
    SignPatternMatrix hconcat(const SignPatternMatrix& o) const;
    bool has_any_entry() const;

private:
    int rows_, cols_;
    std::vector<SignEntry> e_;
};

struct SignSet {
    bool can_neg = false, can_zero = false, can_pos = false;
    bool operator==(const SignSet& o) const {
        return can_neg == o.can_neg && can_zero == o.can_zero && can_pos == o.can_pos;
    }
};

// Achievable signs of det(P'(alpha|beta)) as P' ranges over the pattern P.
SignSet minor_sign_set(const SignPatternMatrix& P, const IndexSet& alpha, const IndexSet& beta);

enum class PatternClass { SNS_POS, SNS_NEG, SIGN_SINGULAR, MIXED };

// Classification of a square pattern without ANY entries (a qualitative class).
PatternClass classify_square_pattern(const SignPatternMatrix& P);

struct SSDResult {
    bool ssd;
    // On failure: a nonsingular, non-sign-nonsingular square submatrix.
    std::optional<std::pair<IndexSet, IndexSet>> witness;
};

// SSD: every square submatrix is singular or sign nonsingular.
SSDResult is_SSD(const RatMatrix& A);

// Same restricted to r x r submatrices.
bool is_r_SSD(const RatMatrix& A, int r);

}  // namespace crncert
