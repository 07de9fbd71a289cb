#include "crncert/concord.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "crncert/graphs.hpp"

namespace crncert {

namespace {

// Can the product g * (minor of P over alpha x beta) be negative / positive?
struct ProductRange {
    bool can_pos = false, can_neg = false;
};

ProductRange product_range(const Rat& g, const SignPatternMatrix& P, const IndexSet& alpha, const IndexSet& beta) {
    ProductRange out;
    if (g == 0) return out;
    SignSet s = minor_sign_set(P, alpha, beta);
    out.can_pos = (g > 0 && s.can_pos) || (g < 0 && s.can_neg);
    out.can_neg = (g > 0 && s.can_neg) || (g < 0 && s.can_pos);
    return out;
}

}  // namespace

ConcordanceResult concordance(const Network& net) {
    StoichTriple st = stoichiometric_matrices(net);
    if (st.gamma.is_zero()) throw std::invalid_argument("concordance: zero stoichiometric matrix");
    int r = rank(st.gamma);
    // pattern of -Dv^t, same shape as gamma
    SignPatternMatrix P = rate_pattern(net).negated().transpose();
    MinorCache cache(st.gamma);
    bool any_pos = false, any_neg = false;
    std::optional<std::pair<IndexSet, IndexSet>> neg_witness;
    for (const IndexSet& alpha : k_subsets(st.gamma.rows(), r))
        for (const IndexSet& beta : k_subsets(st.gamma.cols(), r)) {
            ProductRange p = product_range(cache.minor(alpha, beta), P, alpha, beta);
            any_pos = any_pos || p.can_pos;
            if (p.can_neg && !neg_witness) neg_witness = std::make_pair(alpha, beta);
            any_neg = any_neg || p.can_neg;
        }
    if (!any_pos && !any_neg) return {ConcordanceVerdict::StructurallyDiscordant, std::nullopt};
    if (!any_neg) return {ConcordanceVerdict::ConcordantPos, std::nullopt};
    if (!any_pos) return {ConcordanceVerdict::ConcordantNeg, std::nullopt};
    return {ConcordanceVerdict::Discordant, neg_witness};
}

AccordanceResult accordance(const Network& net) {
    StoichTriple st = stoichiometric_matrices(net);
    SignPatternMatrix P = rate_pattern(net).negated().transpose();
    MinorCache cache(st.gamma);
    int kmax = std::min(st.gamma.rows(), st.gamma.cols());
    for (int k = 1; k <= kmax; ++k)
        for (const IndexSet& alpha : k_subsets(st.gamma.rows(), k))
            for (const IndexSet& beta : k_subsets(st.gamma.cols(), k))
                if (product_range(cache.minor(alpha, beta), P, alpha, beta).can_neg)
                    return {false, std::make_tuple(k, alpha, beta)};
    return {true, std::nullopt};
}

namespace {

ProductSign classify_products(const RatMatrix& G, const RatMatrix& negM, int r) {
    MinorCache gc(G), mc(negM);
    bool any_pos = false, any_neg = false;
    for (const IndexSet& alpha : k_subsets(G.rows(), r))
        for (const IndexSet& beta : k_subsets(G.cols(), r)) {
            Rat q = gc.minor(alpha, beta) * mc.minor(alpha, beta);
            if (q > 0) any_pos = true;
            if (q < 0) any_neg = true;
        }
    if (any_pos && any_neg) return ProductSign::Mixed;
    if (any_pos) return ProductSign::Pos;
    if (any_neg) return ProductSign::Neg;
    return ProductSign::Zero;
}

}  // namespace

ProductSign m_concordance(const Network& net, const RatMatrix& M) {
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    if (M.rows() != st.gamma.rows() || M.cols() != st.gamma.cols())
        throw std::invalid_argument("m_concordance: M shape mismatch");
    return classify_products(st.gamma, -M, rank(st.gamma));
}

bool m_accordance(const Network& net, const RatMatrix& M) {
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    if (M.rows() != st.gamma.rows() || M.cols() != st.gamma.cols())
        throw std::invalid_argument("m_accordance: M shape mismatch");
    RatMatrix negM = -M;
    MinorCache gc(st.gamma), mc(negM);
    int kmax = std::min(st.gamma.rows(), st.gamma.cols());
    for (int k = 1; k <= kmax; ++k)
        for (const IndexSet& alpha : k_subsets(st.gamma.rows(), k))
            for (const IndexSet& beta : k_subsets(st.gamma.cols(), k))
                if (gc.minor(alpha, beta) * mc.minor(alpha, beta) < 0) return false;
    return true;
}

ProductSign semiconcordance(const Network& net) {
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    return m_concordance(net, st.gamma_left);
}

bool semiaccordance(const Network& net) {
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    return m_accordance(net, st.gamma_left);
}

bool is_normal(const Network& net) { return semiconcordance(net) != ProductSign::Zero; }

ConcordanceResult weakly_reversible_shortcut(const Network& net) {
    if (!is_weakly_reversible(complex_digraph(net)))
        throw std::invalid_argument("weakly_reversible_shortcut: network is not weakly reversible");
    StoichTriple st = stoichiometric_matrices(net);
    if (st.gamma.is_zero()) throw std::invalid_argument("weakly_reversible_shortcut: zero stoichiometric matrix");
    int r = rank(st.gamma);
    SignPatternMatrix P = rate_pattern(net).negated().transpose();
    MinorCache cache(st.gamma);
    bool any_pos = false, any_neg = false;
    std::optional<std::pair<IndexSet, IndexSet>> neg_witness;
    for (const IndexSet& alpha : k_subsets(st.gamma.rows(), r))
        for (const IndexSet& beta : k_subsets(st.gamma.cols(), r)) {
            ProductRange p = product_range(cache.minor(alpha, beta), P, alpha, beta);
            any_pos = any_pos || p.can_pos;
            if (p.can_neg && !neg_witness) neg_witness = std::make_pair(alpha, beta);
            any_neg = any_neg || p.can_neg;
        }
    if (!any_pos && !any_neg) return {ConcordanceVerdict::StructurallyDiscordant, std::nullopt};
    if (!any_neg) return {ConcordanceVerdict::ConcordantPos, std::nullopt};
    return {ConcordanceVerdict::Discordant, neg_witness};
}

std::vector<Rat> wr_cycle_scaling(const Network& net) {
    ComplexDigraph g = complex_digraph(net);
    if (!is_weakly_reversible(g)) throw std::invalid_argument("wr_cycle_scaling: network is not weakly reversible");
    std::vector<long> counts = arc_cycle_counts(g);
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    int m = st.gamma.cols();
    RatMatrix B(m, st.gamma.rows());  // -D * Gbar_l^t
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < st.gamma.rows(); ++i) B.at(j, i) = -Rat(counts[j]) * st.gamma_left.at(i, j);
    Rat red = reduced_determinant(st.gamma, B);
    if (red <= 0) throw std::logic_error("wr_cycle_scaling: verification failed");
    std::vector<Rat> d(m);
    for (int j = 0; j < m; ++j) d[j] = counts[j];
    return d;
}

std::optional<IncompatibilityCertificate> strong_incompatibility_search(
    const Network& net, const RatMatrix& M, int budget, unsigned seed) {
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    int n = st.gamma.rows(), m = st.gamma.cols();
    if (M.rows() != n || M.cols() != m) throw std::invalid_argument("strong_incompatibility_search: M shape mismatch");

    // float copies for the search
    std::vector<std::vector<double>> G(n, std::vector<double>(m)), Mf(n, std::vector<double>(m));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            G[i][j] = static_cast<double>(st.gamma.at(i, j));
            Mf[i][j] = static_cast<double>(M.at(i, j));
        }

    // det of [G|-I] D [-M|-I]^t = -G D' M^t + D'' (n x n), float
    auto float_det = [&](const std::vector<double>& d) {
        std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < m; ++j) A[i][k] -= G[i][j] * d[j] * Mf[k][j];
            A[i][i] += d[m + i];
        }
        double det = 1.0;
        for (int c = 0; c < n; ++c) {
            int p = c;
            for (int i = c + 1; i < n; ++i)
                if (std::fabs(A[i][c]) > std::fabs(A[p][c])) p = i;
            if (A[p][c] == 0.0) return 0.0;
            if (p != c) {
                std::swap(A[p], A[c]);
                det = -det;
            }
            det *= A[c][c];
            for (int i = c + 1; i < n; ++i) {
                double f = A[i][c] / A[c][c];
                for (int j = c; j < n; ++j) A[i][j] -= f * A[c][j];
            }
        }
        return det;
    };

    // Rationalize with bounded denominator and verify exactly.
    auto verify = [&](const std::vector<double>& d) -> std::optional<IncompatibilityCertificate> {
        const Int den = 1000000;
        std::vector<Rat> dr(m + n);
        for (int j = 0; j < m; ++j) {
            Int num(static_cast<long long>(std::llround(d[j] * 1e6)));
            if (num <= 0) num = 1;
            dr[j] = Rat(num, den);
        }
        // outflow block computed exactly so that [G|-I] D 1 <= 0 holds
        std::vector<Rat> row(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) row[i] += st.gamma.at(i, j) * dr[j];
        for (int i = 0; i < n; ++i) dr[m + i] = std::max(row[i], Rat(1, 1000000));
        // exact determinant of -G D' M^t + D''
        RatMatrix A(n, n);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < m; ++j) A.at(i, k) -= st.gamma.at(i, j) * dr[j] * M.at(k, j);
            A.at(i, i) += dr[m + i];
        }
        Rat det = determinant(A);
        if (det >= 0) return std::nullopt;
        std::vector<Rat> constraint(n);
        for (int i = 0; i < n; ++i) {
            constraint[i] = row[i] - dr[m + i];
            if (constraint[i] > 0) return std::nullopt;
        }
        return IncompatibilityCertificate{dr, det, constraint};
    };

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> logu(-3.0, 3.0);
    std::vector<double> d(m + n), best;
    double best_det = 0.0;
    for (int it = 0; it < budget; ++it) {
        for (int j = 0; j < m; ++j) d[j] = std::exp(logu(rng));
        double slack = std::exp(logu(rng));
        for (int i = 0; i < n; ++i) {
            double gi = 0.0;
            for (int j = 0; j < m; ++j) gi += G[i][j] * d[j];
            d[m + i] = std::max(gi, 1e-6) + (gi > 0 ? 0.0 : slack * 1e-6);
            d[m + i] = std::max(d[m + i], gi);  // constraint: d'' >= (G d')_i
            if (d[m + i] <= 0) d[m + i] = 1e-6;
        }
        double det = float_det(d);
        if (det < best_det) {
            best_det = det;
            best = d;
            auto cert = verify(best);
            if (cert) return cert;
        }
    }
    if (!best.empty()) return verify(best);
    return std::nullopt;
}

}  // namespace crncert
