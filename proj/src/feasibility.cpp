#include "crncert/feasibility.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace crncert {

std::optional<std::vector<Rat>> solve_feasibility(const LinearSystem& sys) {
    int nv = sys.num_vars;
    int R = int(sys.rows.size());
    if (R == 0) return std::vector<Rat>(nv, 0);
    int n_ineq = 0;
    for (const LinearRow& r : sys.rows)
        if (!r.equality) ++n_ineq;
    // columns: u (nv) | v (nv) | surplus (n_ineq) | artificial (R)
    int C = 2 * nv + n_ineq + R;
    std::vector<std::vector<Rat>> T(R, std::vector<Rat>(C + 1, 0));
    std::vector<int> basis(R);
    int s_idx = 2 * nv;
    for (int r = 0; r < R; ++r) {
        const LinearRow& row = sys.rows[r];
        if (int(row.coeffs.size()) != nv) throw std::invalid_argument("solve_feasibility: row width mismatch");
        Rat sign = (row.rhs < 0) ? Rat(-1) : Rat(1);
        for (int j = 0; j < nv; ++j) {
            T[r][j] = sign * row.coeffs[j];
            T[r][nv + j] = -sign * row.coeffs[j];
        }
        if (!row.equality) T[r][s_idx++] = -sign;
        T[r][C] = sign * row.rhs;
        basis[r] = 2 * nv + n_ineq + r;
        T[r][basis[r]] = 1;
    }
    int art_begin = 2 * nv + n_ineq;

    // Phase-I: minimize the sum of artificial variables, Bland's rule.
    while (true) {
        // reduced cost of column j: c_j - sum over basic artificial rows of T[r][j]
        int enter = -1;
        for (int j = 0; j < C && enter < 0; ++j) {
            Rat rc = (j >= art_begin) ? Rat(1) : Rat(0);
            for (int r = 0; r < R; ++r)
                if (basis[r] >= art_begin) rc -= T[r][j];
            if (rc < 0) enter = j;
        }
        if (enter < 0) break;
        int leave = -1;
        Rat best_ratio = 0;
        for (int r = 0; r < R; ++r) {
            if (T[r][enter] <= 0) continue;
            Rat ratio = T[r][C] / T[r][enter];
            if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave < 0) throw std::logic_error("solve_feasibility: unbounded Phase-I");
        // pivot
        Rat piv = T[leave][enter];
        for (int j = 0; j <= C; ++j) T[leave][j] /= piv;
        for (int r = 0; r < R; ++r) {
            if (r == leave || T[r][enter] == 0) continue;
            Rat f = T[r][enter];
            for (int j = 0; j <= C; ++j) T[r][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    Rat objective = 0;
    for (int r = 0; r < R; ++r)
        if (basis[r] >= art_begin) objective += T[r][C];
    if (objective != 0) return std::nullopt;
    std::vector<Rat> x(nv, 0);
    for (int r = 0; r < R; ++r) {
        if (basis[r] < nv) x[basis[r]] += T[r][C];
        else if (basis[r] < 2 * nv) x[basis[r] - nv] -= T[r][C];
    }
    return x;
}

std::optional<std::vector<Rat>> positive_kernel_vector(const RatMatrix& A) {
    LinearSystem sys;
    sys.num_vars = A.cols();
    for (int i = 0; i < A.rows(); ++i) {
        std::vector<Rat> row(A.cols());
        for (int j = 0; j < A.cols(); ++j) row[j] = A.at(i, j);
        sys.add(row, 0, true);
    }
    for (int j = 0; j < A.cols(); ++j) {
        std::vector<Rat> row(A.cols(), 0);
        row[j] = 1;
        sys.add(row, 1, false);
    }
    return solve_feasibility(sys);
}

bool bounded_classes(const Network& net) {
    StoichTriple st = stoichiometric_matrices(net);
    return positive_kernel_vector(st.gamma.transpose()).has_value();
}

bool admits_positive_equilibria(const Network& net) {
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    return positive_kernel_vector(st.gamma).has_value();
}

bool is_siphon(const Network& net, const IndexSet& sigma) {
    if (sigma.empty()) return false;
    Network exp = irreversible_expansion(net);
    std::set<int> s(sigma.begin(), sigma.end());
    for (const Reaction& rxn : exp.reactions) {
        bool produces = false;
        for (const auto& [i, mult] : rxn.right)
            if (s.count(i)) { produces = true; break; }
        if (!produces) continue;
        bool consumes = false;
        for (const auto& [i, mult] : rxn.left)
            if (s.count(i)) { consumes = true; break; }
        if (!consumes) return false;
    }
    return true;
}

bool is_critical_siphon(const Network& net, const IndexSet& sigma,
                        std::optional<std::vector<Rat>>* psemiflow_out) {
    if (!is_siphon(net, sigma)) throw std::invalid_argument("is_critical_siphon: not a siphon");
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    int n = st.gamma.rows(), m = st.gamma.cols();
    std::set<int> in_sigma(sigma.begin(), sigma.end());

    // critical iff feasible: x_i = 0 (i in sigma), x_i >= 1 (else), x + Gbar w >= 1
    LinearSystem sys;
    sys.num_vars = n + m;
    for (int i = 0; i < n; ++i) {
        std::vector<Rat> row(n + m, 0);
        row[i] = 1;
        sys.add(row, in_sigma.count(i) ? 0 : 1, in_sigma.count(i) > 0);
    }
    for (int i = 0; i < n; ++i) {
        std::vector<Rat> row(n + m, 0);
        row[i] = 1;
        for (int j = 0; j < m; ++j) row[n + j] = st.gamma.at(i, j);
        sys.add(row, 1, false);
    }
    bool critical = solve_feasibility(sys).has_value();

    // sufficient condition for non-criticality: a P-semiflow supported in sigma
    LinearSystem ps;
    ps.num_vars = n;
    for (int j = 0; j < m; ++j) {
        std::vector<Rat> row(n, 0);
        for (int i = 0; i < n; ++i) row[i] = st.gamma.at(i, j);
        ps.add(row, 0, true);
    }
    std::vector<Rat> total(n, 0);
    for (int i = 0; i < n; ++i) {
        std::vector<Rat> row(n, 0);
        row[i] = 1;
        ps.add(row, 0, in_sigma.count(i) == 0);  // p_i >= 0, and = 0 off sigma
        if (in_sigma.count(i)) total[i] = 1;
    }
    ps.add(total, 1, false);
    auto psemiflow = solve_feasibility(ps);
    if (psemiflow && critical) throw std::logic_error("is_critical_siphon: P-semiflow contradicts LP verdict");
    if (psemiflow_out) *psemiflow_out = psemiflow;
    return critical;
}

namespace {

std::vector<IndexSet> siphon_closures(const Network& net) {
    Network exp = irreversible_expansion(net);
    int n = int(net.species.size());
    std::set<std::set<int>> visited, closed;

    std::function<void(std::set<int>&)> extend = [&](std::set<int>& sigma) {
        if (!visited.insert(sigma).second) return;
        // find a violated reaction: produces a member, no member reactant
        for (const Reaction& rxn : exp.reactions) {
            bool produces = false;
            for (const auto& [i, mult] : rxn.right)
                if (sigma.count(i)) { produces = true; break; }
            if (!produces) continue;
            bool consumes = false;
            for (const auto& [i, mult] : rxn.left)
                if (sigma.count(i)) { consumes = true; break; }
            if (consumes) continue;
            if (rxn.left.empty()) return;  // inflow reaction: no siphon extension possible
            for (const auto& [i, mult] : rxn.left) {
                std::set<int> next = sigma;
                next.insert(i);
                extend(next);
            }
            return;
        }
        closed.insert(sigma);
    };
    for (int s = 0; s < n; ++s) {
        std::set<int> seed{s};
        extend(seed);
    }
    std::vector<IndexSet> out;
    for (const auto& s : closed) out.emplace_back(s.begin(), s.end());
    return out;
}

}  // namespace

std::vector<Siphon> minimal_siphons(const Network& net) {
    std::vector<IndexSet> all = siphon_closures(net);
    std::vector<Siphon> out;
    for (const IndexSet& s : all) {
        bool minimal = true;
        for (const IndexSet& t : all)
            if (t != s && std::includes(s.begin(), s.end(), t.begin(), t.end())) { minimal = false; break; }
        if (!minimal) continue;
        Siphon sp;
        sp.species = s;
        sp.minimal = true;
        sp.critical = is_critical_siphon(net, s, &sp.psemiflow);
        out.push_back(std::move(sp));
    }
    std::sort(out.begin(), out.end(), [](const Siphon& a, const Siphon& b) { return a.species < b.species; });
    return out;
}

PersistenceFlags persistence_flags(const Network& net) {
    int n = int(net.species.size());
    if (n > 20) throw std::invalid_argument("persistence_flags: too many species for exhaustive siphon scan");
    PersistenceFlags f;
    f.pc1 = true;
    f.pc2 = true;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        IndexSet sigma;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) sigma.push_back(i);
        if (!is_siphon(net, sigma)) continue;
        bool full = int(sigma.size()) == n;
        bool critical = is_critical_siphon(net, sigma);
        if (!full) f.pc1 = false;
        if (critical) {
            f.pc1 = false;
            f.pc2 = false;
        }
    }
    return f;
}

}  // namespace crncert
