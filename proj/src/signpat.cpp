#include "crncert/signpat.hpp"

#include <algorithm>
#include <numeric>

namespace crncert {

SignPatternMatrix SignPatternMatrix::pattern_of(const RatMatrix& A) {
    SignPatternMatrix P(A.rows(), A.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) P.at(i, j) = sign_of(A.at(i, j));
    return P;
}

SignPatternMatrix SignPatternMatrix::transpose() const {
    SignPatternMatrix T(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) T.at(j, i) = at(i, j);
    return T;
}

SignPatternMatrix SignPatternMatrix::negated() const {
    SignPatternMatrix N(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) N.at(i, j) = negate(at(i, j));
    return N;
}

SignPatternMatrix SignPatternMatrix::submatrix(const IndexSet& rows, const IndexSet& cols) const {
    SignPatternMatrix S(int(rows.size()), int(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) S.at(int(i), int(j)) = at(rows[i], cols[j]);
    return S;
}

SignPatternMatrix SignPatternMatrix::hconcat(const SignPatternMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hconcat row mismatch");
    SignPatternMatrix C(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) C.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) C.at(i, cols_ + j) = o.at(i, j);
    }
    return C;
}

bool SignPatternMatrix::has_any_entry() const {
    for (const SignEntry& s : e_)
        if (s == SignEntry::ANY) return true;
    return false;
}

namespace {

// Achievable signs of one permutation term: ZERO factor kills the term; an ANY
// factor (with all other factors nonzero) lets the term take any value; else
// the term has the fixed sign given by parity.
//
// Justification for the determinant-level aggregation below: to realize a
// strict sign predicted by one term, set that term's entries to 1 and every
// other free entry to eps; all other permutation terms then carry at least two
// factors of eps, so the chosen term dominates as eps -> 0.
struct TermScan {
    bool any_term_nonzero = false;  // some term not identically zero
    bool can_pos = false, can_neg = false;
    bool has_any_term = false;      // some term contains an ANY factor
    bool fixed_pos = false, fixed_neg = false;  // strict-signed ANY-free terms seen
};

void scan_terms(const SignPatternMatrix& P, const IndexSet& alpha, const IndexSet& beta, TermScan& out) {
    int k = int(alpha.size());
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        // permutation parity
        int inv = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) ++inv;
        int sgn = (inv % 2) ? -1 : 1;
        bool zero = false, any = false;
        int neg_factors = 0;
        for (int i = 0; i < k; ++i) {
            switch (P.at(alpha[i], beta[perm[i]])) {
                case SignEntry::ZERO: zero = true; break;
                case SignEntry::NEG: ++neg_factors; break;
                case SignEntry::ANY: any = true; break;
                case SignEntry::POS: break;
            }
            if (zero) break;
        }
        if (zero) continue;
        out.any_term_nonzero = true;
        if (any) {
            out.has_any_term = true;
            out.can_pos = out.can_neg = true;
        } else {
            int s = sgn * ((neg_factors % 2) ? -1 : 1);
            (s > 0 ? out.can_pos : out.can_neg) = true;
            (s > 0 ? out.fixed_pos : out.fixed_neg) = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

SignSet minor_sign_set(const SignPatternMatrix& P, const IndexSet& alpha, const IndexSet& beta) {
    if (alpha.size() != beta.size() || alpha.empty()) throw std::invalid_argument("minor_sign_set: |alpha| != |beta| or empty");
    TermScan t;
    scan_terms(P, alpha, beta, t);
    SignSet s;
    s.can_pos = t.can_pos;
    s.can_neg = t.can_neg;
    // Sign-nonsingular by the all-terms-same-sign test: some nonzero term, no
    // ANY-bearing terms, and every strict-signed term agrees.  Exactly then the
    // determinant is bounded away from zero over the whole pattern.
    bool sns = t.any_term_nonzero && !t.has_any_term && !(t.fixed_pos && t.fixed_neg);
    s.can_zero = !sns;
    return s;
}

PatternClass classify_square_pattern(const SignPatternMatrix& P) {
    if (P.rows() != P.cols()) throw std::invalid_argument("classify_square_pattern: not square");
    if (P.has_any_entry()) throw std::invalid_argument("classify_square_pattern: ANY entries not allowed");
    IndexSet all(P.rows());
    std::iota(all.begin(), all.end(), 0);
    TermScan t;
    scan_terms(P, all, all, t);
    if (!t.any_term_nonzero) return PatternClass::SIGN_SINGULAR;
    if (t.fixed_pos && !t.fixed_neg) return PatternClass::SNS_POS;
    if (t.fixed_neg && !t.fixed_pos) return PatternClass::SNS_NEG;
    return PatternClass::MIXED;
}

namespace {

bool submatrix_ok(const RatMatrix& A, MinorCache& cache, const IndexSet& alpha, const IndexSet& beta) {
    if (cache.minor(alpha, beta) == 0) return true;  // singular
    SignPatternMatrix P = SignPatternMatrix::pattern_of(A.submatrix(alpha, beta));
    PatternClass c = classify_square_pattern(P);
    return c == PatternClass::SNS_POS || c == PatternClass::SNS_NEG;
}

}  // namespace

SSDResult is_SSD(const RatMatrix& A) {
    MinorCache cache(A);
    int kmax = std::min(A.rows(), A.cols());
    for (int k = 1; k <= kmax; ++k)
        for (const IndexSet& alpha : k_subsets(A.rows(), k))
            for (const IndexSet& beta : k_subsets(A.cols(), k))
                if (!submatrix_ok(A, cache, alpha, beta)) return {false, std::make_pair(alpha, beta)};
    return {true, std::nullopt};
}

bool is_r_SSD(const RatMatrix& A, int r) {
    if (r < 1 || r > std::min(A.rows(), A.cols())) throw std::out_of_range("is_r_SSD: r out of range");
    MinorCache cache(A);
    for (const IndexSet& alpha : k_subsets(A.rows(), r))
        for (const IndexSet& beta : k_subsets(A.cols(), r))
            if (!submatrix_ok(A, cache, alpha, beta)) return false;
    return true;
}

}  // namespace crncert
