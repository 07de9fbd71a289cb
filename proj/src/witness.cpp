#include "crncert/witness.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "crncert/feasibility.hpp"

namespace crncert {

namespace {

double to_d(const Rat& r) { return r.convert_to<double>(); }

Eigen::MatrixXd to_eigen(const RatMatrix& A) {
    Eigen::MatrixXd out(A.rows(), A.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) out(i, j) = to_d(A.at(i, j));
    return out;
}

double kahan_sum(const std::vector<double>& terms) {
    double s = 0.0, c = 0.0;
    for (double t : terms) {
        double y = t - c;
        double u = s + y;
        c = (u - s) - y;
        s = u;
    }
    return s;
}

// Monomial coefficients of the unique polynomial through (xs[k], ys[k]),
// Newton divided differences expanded exactly.
std::vector<Rat> poly_from_samples(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    int n = int(xs.size());
    std::vector<Rat> dd = ys;
    for (int level = 1; level < n; ++level)
        for (int k = n - 1; k >= level; --k) dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - level]);
    // expand sum_k dd[k] * prod_{i<k} (t - xs[i])
    std::vector<Rat> coeffs(n, 0), basis{Rat(1)};
    for (int k = 0; k < n; ++k) {
        for (size_t i = 0; i < basis.size(); ++i) coeffs[i] += dd[k] * basis[i];
        if (k + 1 < n) {
            basis.push_back(0);
            for (size_t i = basis.size() - 1; i > 0; --i) basis[i] = basis[i - 1] - xs[k] * basis[i];
            basis[0] = -xs[k] * basis[0];
        }
    }
    return coeffs;
}

Rat poly_eval(const std::vector<Rat>& coeffs, const Rat& t) {
    Rat v = 0;
    for (size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
    return v;
}

// Bisect a sign change of an exactly-evaluated polynomial.
double bisect_poly(const std::vector<Rat>& coeffs, Rat lo, Rat hi, int iters) {
    int slo = poly_eval(coeffs, lo) > 0 ? 1 : -1;
    for (int it = 0; it < iters; ++it) {
        Rat mid = (lo + hi) / 2;
        Rat v = poly_eval(coeffs, mid);
        if (v == 0) return to_d(mid);
        if ((v > 0 ? 1 : -1) == slo) lo = mid;
        else hi = mid;
    }
    return to_d((lo + hi) / 2);
}

// Orthonormal basis of the column space (r = exact rank).
Eigen::MatrixXd image_basis(const Eigen::MatrixXd& A, int r) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd Q = qr.householderQ();
    return Q.leftCols(r);
}

Eigen::VectorXd smallest_direction(const Eigen::MatrixXd& B) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeFullV);
    return svd.matrixV().col(B.cols() - 1);
}

struct PairProduct {
    IndexSet alpha, beta;
    Rat p;  // A[alpha|beta] * Mx[alpha|beta], nonzero
};

std::vector<PairProduct> minor_products(const RatMatrix& A, const RatMatrix& Mx, int r) {
    MinorCache ca(A), cm(Mx);
    std::vector<PairProduct> out;
    for (const IndexSet& alpha : k_subsets(A.rows(), r))
        for (const IndexSet& beta : k_subsets(A.cols(), r)) {
            Rat p = ca.minor(alpha, beta) * cm.minor(alpha, beta);
            if (p != 0) out.push_back({alpha, beta, p});
        }
    return out;
}

// ---------------------------------------------------------------------------
// Shared collision machinery: positive diagonals D1 (columns) and D2 (rows)
// with sum_{a,b} A[a|b] Mx[a|b] prod(D1_b) prod(D2_a) ~ 0, plus a unit kernel
// direction of A D1 Mx^t D2 restricted to im A.
// ---------------------------------------------------------------------------

struct CollisionCore {
    std::vector<double> d1, d2;
    Eigen::VectorXd dx;  // unit vector in im A
    Eigen::MatrixXd Q;   // orthonormal basis of im A
    ScalingPath path;
};

// Exact value of the weighted product sum at diagonals (d1, d2).
Rat scaled_sum(const std::vector<PairProduct>& prods, const std::vector<Rat>& d1, const std::vector<Rat>& d2) {
    Rat s = 0;
    for (const PairProduct& pp : prods) {
        Rat w = pp.p;
        for (int j : pp.beta) w *= d1[j];
        for (int i : pp.alpha) w *= d2[i];
        s += w;
    }
    return s;
}

// Diagonals concentrated at (alpha, beta): weight 1 there, eps elsewhere,
// eps shrunk until the sum takes the sign of the chosen product.
std::pair<std::vector<Rat>, std::vector<Rat>> concentrated_diagonals(const std::vector<PairProduct>& prods,
                                                                     const PairProduct& target, int nrows,
                                                                     int ncols) {
    for (int k = 0; k < 300; ++k) {
        Rat eps(1, Int(1) << k);
        std::vector<Rat> d1(ncols, eps), d2(nrows, eps);
        for (int j : target.beta) d1[j] = 1;
        for (int i : target.alpha) d2[i] = 1;
        Rat s = scaled_sum(prods, d1, d2);
        if ((target.p > 0 && s > 0) || (target.p < 0 && s < 0)) return {d1, d2};
    }
    throw ConstructionFailed("concentrated scaling did not reach the target sign");
}

CollisionCore collision_core(const RatMatrix& A, const RatMatrix& Mx) {
    int r = rank(A);
    std::vector<PairProduct> prods = minor_products(A, Mx, r);
    bool any_pos = std::any_of(prods.begin(), prods.end(), [](const PairProduct& p) { return p.p > 0; });
    bool any_neg = std::any_of(prods.begin(), prods.end(), [](const PairProduct& p) { return p.p < 0; });

    CollisionCore core;
    Eigen::MatrixXd Ad = to_eigen(A), Md = to_eigen(Mx);
    core.Q = image_basis(Ad, r);

    if (any_pos && any_neg) {
        const PairProduct* pos = nullptr;
        const PairProduct* neg = nullptr;
        for (const PairProduct& pp : prods) {
            if (pp.p > 0 && !pos) pos = &pp;
            if (pp.p < 0 && !neg) neg = &pp;
        }
        auto [a1, a2] = concentrated_diagonals(prods, *pos, A.rows(), A.cols());
        auto [b1, b2] = concentrated_diagonals(prods, *neg, A.rows(), A.cols());
        // the sum along the linear path is a polynomial of degree <= 2r in t
        int deg = 2 * r;
        std::vector<Rat> xs, ys;
        for (int k = 0; k <= deg; ++k) {
            Rat t(k, deg);
            std::vector<Rat> c1(A.cols()), c2(A.rows());
            for (int j = 0; j < A.cols(); ++j) c1[j] = (1 - t) * a1[j] + t * b1[j];
            for (int i = 0; i < A.rows(); ++i) c2[i] = (1 - t) * a2[i] + t * b2[i];
            xs.push_back(t);
            ys.push_back(scaled_sum(prods, c1, c2));
        }
        std::vector<Rat> poly = poly_from_samples(xs, ys);
        double ts = bisect_poly(poly, 0, 1, 200);
        core.path.t_star = ts;
        for (int j = 0; j < A.cols(); ++j) {
            core.path.d_a.push_back(to_d(a1[j]));
            core.path.d_b.push_back(to_d(b1[j]));
        }
        core.d1.resize(A.cols());
        core.d2.resize(A.rows());
        for (int j = 0; j < A.cols(); ++j) core.d1[j] = (1 - ts) * to_d(a1[j]) + ts * to_d(b1[j]);
        for (int i = 0; i < A.rows(); ++i) core.d2[i] = (1 - ts) * to_d(a2[i]) + ts * to_d(b2[i]);
    } else if (!any_pos && !any_neg) {
        // every product vanishes: identity scalings already give a singular
        // restriction
        core.d1.assign(A.cols(), 1.0);
        core.d2.assign(A.rows(), 1.0);
        core.path.d_a = core.d1;
        core.path.d_b = core.d1;
        core.path.t_star = 0.0;
    } else {
        throw std::logic_error("collision_core: single-signed products; caller must return ForcedNone");
    }

    Eigen::VectorXd e1 = Eigen::Map<Eigen::VectorXd>(core.d1.data(), core.d1.size());
    Eigen::VectorXd e2 = Eigen::Map<Eigen::VectorXd>(core.d2.data(), core.d2.size());
    Eigen::MatrixXd K = Ad * e1.asDiagonal() * Md.transpose() * e2.asDiagonal();
    Eigen::MatrixXd B = core.Q.transpose() * K * core.Q;
    core.dx = core.Q * smallest_direction(B);
    return core;
}

// Build the two-state collision from the singular scaling: states chosen so
// that the mean-value diagonals of the monomial map are exact, leaving only
// the kernel defect as residual.
CollisionWitness build_collision(const RatMatrix& A, const RatMatrix& Mx, const CollisionCore& core, double tol) {
    int n = A.rows(), q = A.cols();
    Eigen::MatrixXd Md = to_eigen(Mx), Ad = to_eigen(A);
    for (double scale = 0.25; scale > 1e-13; scale /= 2) {
        std::vector<double> dx(n), x(n), y(n);
        for (int i = 0; i < n; ++i) dx[i] = scale * core.dx(i);
        for (int i = 0; i < n; ++i) {
            double t = core.d2[i] * dx[i];
            x[i] = (t == 0.0) ? 1.0 / core.d2[i] : dx[i] / std::expm1(t);
            y[i] = x[i] + dx[i];
        }
        std::vector<double> wx(q), wy(q), E(q);
        bool ok = true;
        for (int j = 0; j < q && ok; ++j) {
            double lx = 0, ly = 0, t = 0;
            for (int i = 0; i < n; ++i) {
                lx += Md(i, j) * std::log(x[i]);
                ly += Md(i, j) * std::log(y[i]);
                t += Md(i, j) * core.d2[i] * dx[i];
            }
            wx[j] = std::exp(lx);
            wy[j] = std::exp(ly);
            double dtilde = (t == 0.0) ? wx[j] : wx[j] * std::expm1(t) / t;
            if (!(dtilde > 0) || !std::isfinite(dtilde)) {
                ok = false;
                break;
            }
            E[j] = core.d1[j] / dtilde;
        }
        if (!ok) continue;
        double residual = 0;
        for (int i = 0; i < n; ++i) {
            std::vector<double> terms(q);
            for (int j = 0; j < q; ++j) terms[j] = Ad(i, j) * E[j] * (wy[j] - wx[j]);
            residual = std::max(residual, std::fabs(kahan_sum(terms)));
        }
        Eigen::VectorXd dv = Eigen::Map<Eigen::VectorXd>(dx.data(), n);
        double offset = (dv - core.Q * (core.Q.transpose() * dv)).lpNorm<Eigen::Infinity>();
        double sep = *std::max_element(dx.begin(), dx.end(),
                                       [](double a, double b) { return std::fabs(a) < std::fabs(b); });
        if (residual <= tol && offset <= tol && std::fabs(sep) > 1e-12) {
            CollisionWitness w;
            w.kinetics.rate_constants = E;
            w.kinetics.exponents.assign(q, std::vector<double>(n));
            for (int j = 0; j < q; ++j)
                for (int i = 0; i < n; ++i) w.kinetics.exponents[j][i] = Md(i, j);
            w.x = x;
            w.y = y;
            w.residual = residual;
            w.class_offset = offset;
            return w;
        }
    }
    throw ConstructionFailed("collision residual did not reach tolerance");
}

}  // namespace

std::optional<CollisionWitness> collision_witness(const Network& net, const RatMatrix& M, double tol,
                                                  unsigned seed) {
    (void)seed;
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    ProductSign ps = m_concordance(net, M);
    if (ps == ProductSign::Pos || ps == ProductSign::Neg) return std::nullopt;
    CollisionCore core = collision_core(st.gamma, M);
    return build_collision(st.gamma, M, core, tol);
}

std::optional<CollisionWitness> open_collision_witness(const Network& net, const RatMatrix& M, double tol,
                                                       unsigned seed) {
    (void)seed;
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    if (m_accordance(net, M)) return std::nullopt;
    int n = st.gamma.rows();
    RatMatrix Ag = st.gamma.hconcat(-RatMatrix::identity(n));
    RatMatrix Maug = M.hconcat(RatMatrix::identity(n));
    CollisionCore core = collision_core(Ag, Maug);
    return build_collision(Ag, Maug, core, tol);
}

namespace {

// A full-size instantiation of pattern P whose (alpha|beta) minor has sign
// `want`: the entries of one permutation term achieving that sign get
// magnitude 1, every other nonzero entry magnitude eps.
std::optional<RatMatrix> realize_minor_sign(const SignPatternMatrix& P, const IndexSet& alpha,
                                            const IndexSet& beta, int want, const Rat& eps) {
    int r = int(alpha.size());
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        // parity of perm
        int inversions = 0;
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                if (perm[i] > perm[j]) ++inversions;
        int sign = (inversions % 2) ? -1 : 1;
        bool dead = false, has_any = false;
        for (int i = 0; i < r && !dead; ++i) {
            SignEntry e = P.at(alpha[i], beta[perm[i]]);
            if (e == SignEntry::ZERO) dead = true;
            else if (e == SignEntry::NEG) sign = -sign;
            else if (e == SignEntry::ANY) has_any = true;
        }
        if (dead || (!has_any && sign != want)) continue;
        RatMatrix N(P.rows(), P.cols());
        for (int i = 0; i < P.rows(); ++i)
            for (int j = 0; j < P.cols(); ++j) {
                SignEntry e = P.at(i, j);
                if (e == SignEntry::POS || e == SignEntry::ANY) N.at(i, j) = eps;
                else if (e == SignEntry::NEG) N.at(i, j) = -eps;
            }
        bool flip_needed = (sign != want);
        for (int i = 0; i < r; ++i) {
            SignEntry e = P.at(alpha[i], beta[perm[i]]);
            Rat v = (e == SignEntry::NEG) ? Rat(-1) : Rat(1);
            if (e == SignEntry::ANY && flip_needed) {
                v = -1;
                flip_needed = false;
            }
            N.at(alpha[i], beta[perm[i]]) = v;
        }
        if (!flip_needed) return N;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

// sum_{a,b} G[a|b] * N[a|b] * prod_{j in b} z_j  (determinant of G E N^t
// restricted to im G, E = diag(z)).
Rat pattern_sum(const RatMatrix& G, const RatMatrix& N, const std::vector<Rat>& z, int r) {
    MinorCache cg(G), cn(N);
    Rat s = 0;
    for (const IndexSet& alpha : k_subsets(G.rows(), r))
        for (const IndexSet& beta : k_subsets(G.cols(), r)) {
            Rat g = cg.minor(alpha, beta);
            if (g == 0) continue;
            Rat w = g * cn.minor(alpha, beta);
            if (w == 0) continue;
            for (int j : beta) w *= z[j];
            s += w;
        }
    return s;
}

RatMatrix pattern_endpoint(const RatMatrix& G, const SignPatternMatrix& P, const std::vector<Rat>& z, int r,
                           const IndexSet& alpha, const IndexSet& beta, int want_sum_sign) {
    MinorCache cg(G);
    Rat g = cg.minor(alpha, beta);
    int minor_want = (g > 0) == (want_sum_sign > 0) ? 1 : -1;
    for (int k = 0; k < 300; ++k) {
        Rat eps(1, Int(1) << k);
        auto N = realize_minor_sign(P, alpha, beta, minor_want, eps);
        if (!N) throw ConstructionFailed("no permutation term realizes the required minor sign");
        Rat s = pattern_sum(G, *N, z, r);
        if ((want_sum_sign > 0 && s > 0) || (want_sum_sign < 0 && s < 0)) return *N;
    }
    throw ConstructionFailed("pattern endpoint did not reach the target sign");
}

}  // namespace

std::optional<EquilibriaPairWitness> class_multistationarity_witness(const Network& net, double tol,
                                                                     unsigned seed, double lambda_scale) {
    (void)seed;
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    int n = st.gamma.rows(), m = st.gamma.cols();
    int r = rank(st.gamma);
    auto z = positive_kernel_vector(st.gamma);
    if (!z) return std::nullopt;

    // both signs among G[a|b] * N[a|b] over exponent matrices N sharing the
    // sign pattern of the reactant matrix
    SignPatternMatrix P = SignPatternMatrix::pattern_of(st.gamma_left);
    MinorCache cg(st.gamma);
    std::optional<std::pair<IndexSet, IndexSet>> pos_pair, neg_pair;
    for (const IndexSet& alpha : k_subsets(n, r))
        for (const IndexSet& beta : k_subsets(m, r)) {
            Rat g = cg.minor(alpha, beta);
            if (g == 0) continue;
            SignSet s = minor_sign_set(P, alpha, beta);
            bool can_pos = (g > 0 && s.can_pos) || (g < 0 && s.can_neg);
            bool can_neg = (g > 0 && s.can_neg) || (g < 0 && s.can_pos);
            if (can_pos && !pos_pair) pos_pair = std::make_pair(alpha, beta);
            if (can_neg && !neg_pair) neg_pair = std::make_pair(alpha, beta);
        }

    Eigen::MatrixXd M0(n, m);
    if (pos_pair && neg_pair) {
        RatMatrix Na = pattern_endpoint(st.gamma, P, *z, r, pos_pair->first, pos_pair->second, +1);
        RatMatrix Nb = pattern_endpoint(st.gamma, P, *z, r, neg_pair->first, neg_pair->second, -1);
        std::vector<Rat> xs, ys;
        for (int k = 0; k <= r; ++k) {
            Rat t(k, std::max(r, 1));
            RatMatrix Nt(n, m);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j) Nt.at(i, j) = (1 - t) * Na.at(i, j) + t * Nb.at(i, j);
            xs.push_back(t);
            ys.push_back(pattern_sum(st.gamma, Nt, *z, r));
        }
        double ts = bisect_poly(poly_from_samples(xs, ys), 0, 1, 200);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) M0(i, j) = (1 - ts) * to_d(Na.at(i, j)) + ts * to_d(Nb.at(i, j));
    } else if (!pos_pair && !neg_pair) {
        // every product vanishes identically: the reactant matrix itself works
        M0 = to_eigen(st.gamma_left);
    } else {
        return std::nullopt;  // single-signed: no pattern member is singular
    }
    M0 *= lambda_scale;

    Eigen::MatrixXd Gd = to_eigen(st.gamma);
    Eigen::VectorXd zd(m);
    for (int j = 0; j < m; ++j) zd(j) = to_d((*z)[j]);
    Eigen::MatrixXd Q = image_basis(Gd, r);
    Eigen::MatrixXd K = Gd * zd.asDiagonal() * M0.transpose();
    Eigen::VectorXd dx0 = Q * smallest_direction(Q.transpose() * K * Q);

    for (double scale = 0.25 / lambda_scale; scale > 1e-14; scale /= 2) {
        Eigen::VectorXd dx = scale * dx0;
        Eigen::VectorXd u0 = M0.transpose() * dx;  // |entries| must stay < 1
        if (dx.lpNorm<Eigen::Infinity>() >= 0.5 || u0.lpNorm<Eigen::Infinity>() >= 0.5) continue;
        std::vector<double> d1(m), d2(n);
        for (int j = 0; j < m; ++j) d1[j] = (u0(j) == 0.0) ? 1.0 : u0(j) / std::log1p(u0(j));
        for (int i = 0; i < n; ++i) d2[i] = (dx(i) == 0.0) ? 1.0 : std::log1p(dx(i)) / dx(i);
        EquilibriaPairWitness w;
        w.kinetics.exponents.assign(m, std::vector<double>(n));
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i) w.kinetics.exponents[j][i] = M0(i, j) / (d2[i] * d1[j]);
        w.kinetics.rate_constants.assign(m, 0.0);
        for (int j = 0; j < m; ++j) w.kinetics.rate_constants[j] = zd(j);
        w.x.assign(n, 1.0);
        w.y.resize(n);
        for (int i = 0; i < n; ++i) w.y[i] = 1.0 + dx(i);
        // residuals recomputed from the emitted data
        auto residual_at = [&](const std::vector<double>& pt) {
            double res = 0;
            std::vector<double> rates(m);
            for (int j = 0; j < m; ++j) {
                double lg = 0;
                for (int i = 0; i < n; ++i) lg += w.kinetics.exponents[j][i] * std::log(pt[i]);
                rates[j] = w.kinetics.rate_constants[j] * std::exp(lg);
            }
            for (int i = 0; i < n; ++i) {
                std::vector<double> terms(m);
                for (int j = 0; j < m; ++j) terms[j] = Gd(i, j) * rates[j];
                res = std::max(res, std::fabs(kahan_sum(terms)));
            }
            return res;
        };
        w.residual_x = residual_at(w.x);
        w.residual_y = residual_at(w.y);
        w.class_offset = (dx - Q * (Q.transpose() * dx)).lpNorm<Eigen::Infinity>();
        if (w.residual_x <= tol && w.residual_y <= tol && w.class_offset <= tol &&
            dx.lpNorm<Eigen::Infinity>() > 1e-12)
            return w;
    }
    throw ConstructionFailed("equilibria-pair residual did not reach tolerance");
}

OpenSystemWitness open_multistationarity_witness(const Network& net, const IncompatibilityCertificate& cert,
                                                 std::optional<RatMatrix> M_opt, double tol) {
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    int n = st.gamma.rows(), m = st.gamma.cols();
    RatMatrix M = M_opt ? *M_opt : st.gamma_left;
    if (int(cert.d.size()) != m + n) throw std::invalid_argument("open_multistationarity_witness: certificate size");

    // re-verify the certificate exactly
    RatMatrix B0(n, n);  // Gbar D' M^t - D''
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < m; ++j) B0.at(i, k) += st.gamma.at(i, j) * cert.d[j] * M.at(k, j);
        B0.at(i, i) -= cert.d[m + i];
    }
    if (determinant(-B0) >= 0) throw std::invalid_argument("open_multistationarity_witness: certificate determinant");
    for (int i = 0; i < n; ++i) {
        Rat row = -cert.d[m + i];
        for (int j = 0; j < m; ++j) row += st.gamma.at(i, j) * cert.d[j];
        if (row > 0) throw std::invalid_argument("open_multistationarity_witness: certificate constraint");
    }

    // F(s) = det(B0 - sI) = (-1)^n charpoly_{B0}(s); it changes sign between
    // s = 0 and large s, the root makes the outflow-inflated scaling singular
    std::vector<Rat> cp = char_poly(B0);
    std::vector<Rat> F(cp.size());
    for (size_t k = 0; k < cp.size(); ++k) F[k] = (n % 2) ? -cp[k] : cp[k];
    Rat s_hi = 1;
    int sign0 = poly_eval(F, 0) > 0 ? 1 : -1;
    int guard = 0;
    while ((poly_eval(F, s_hi) > 0 ? 1 : -1) == sign0) {
        s_hi *= 2;
        if (++guard > 200) throw ConstructionFailed("no sign change when inflating outflows");
    }
    double s_star = bisect_poly(F, 0, s_hi, 200);

    std::vector<double> D1(m + n);
    for (int j = 0; j < m; ++j) D1[j] = to_d(cert.d[j]);
    for (int i = 0; i < n; ++i) D1[m + i] = to_d(cert.d[m + i]) + s_star;

    // kernel direction of Gbar diag(d') M^t - diag(d'' + s*)
    Eigen::MatrixXd Gd = to_eigen(st.gamma), Md = to_eigen(M);
    Eigen::MatrixXd K(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double v = 0;
            for (int j = 0; j < m; ++j) v += Gd(i, j) * D1[j] * Md(k, j);
            K(i, k) = v - (i == k ? D1[m + i] : 0.0);
        }
    Eigen::VectorXd z0 = smallest_direction(K);

    for (double scale = 0.5; scale > 1e-13; scale /= 2) {
        Eigen::VectorXd zz = scale * z0;
        // mean-value diagonals of (x^{M^t}, x) between 1 and exp(z)
        std::vector<double> Ehat(m + n);
        bool ok = true;
        for (int a = 0; a < m + n && ok; ++a) {
            double t = 0;
            if (a < m)
                for (int i = 0; i < n; ++i) t += Md(i, a) * zz(i);
            else
                t = zz(a - m);
            double dtilde = (t == 0.0) ? 1.0 : std::expm1(t) / t;
            if (!(dtilde > 0) || !std::isfinite(dtilde)) ok = false;
            else Ehat[a] = D1[a] / dtilde;
        }
        if (!ok) continue;
        std::vector<double> c(n);
        bool cpos = true;
        for (int i = 0; i < n; ++i) {
            std::vector<double> terms(m + 1);
            for (int j = 0; j < m; ++j) terms[j] = -Gd(i, j) * Ehat[j];
            terms[m] = Ehat[m + i];
            c[i] = kahan_sum(terms);
            if (!(c[i] > 0)) cpos = false;
        }
        if (!cpos) continue;

        OpenSystemWitness w;
        w.kinetics.exponents.assign(m, std::vector<double>(n));
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i) w.kinetics.exponents[j][i] = Md(i, j);
        w.kinetics.rate_constants.assign(Ehat.begin(), Ehat.begin() + m);
        w.outflow.assign(Ehat.begin() + m, Ehat.end());
        w.inflow = c;
        w.x.assign(n, 1.0);
        w.y.resize(n);
        for (int i = 0; i < n; ++i) w.y[i] = std::exp(zz(i));
        auto residual_at = [&](const std::vector<double>& pt) {
            double res = 0;
            std::vector<double> rates(m);
            for (int j = 0; j < m; ++j) {
                double lg = 0;
                for (int i = 0; i < n; ++i) lg += Md(i, j) * std::log(pt[i]);
                rates[j] = w.kinetics.rate_constants[j] * std::exp(lg);
            }
            for (int i = 0; i < n; ++i) {
                std::vector<double> terms(m + 2);
                for (int j = 0; j < m; ++j) terms[j] = Gd(i, j) * rates[j];
                terms[m] = -w.outflow[i] * pt[i];
                terms[m + 1] = c[i];
                res = std::max(res, std::fabs(kahan_sum(terms)));
            }
            return res;
        };
        w.residual_x = residual_at(w.x);
        w.residual_y = residual_at(w.y);
        if (w.residual_x <= tol && w.residual_y <= tol && zz.lpNorm<Eigen::Infinity>() > 1e-12) return w;
    }
    throw ConstructionFailed("open-system residual did not reach tolerance");
}

// ---------------------------------------------------------------------------
// Independent re-verification
// ---------------------------------------------------------------------------

namespace {

std::vector<double> powlaw_rates(const PowerLawKinetics& k, const std::vector<double>& x) {
    std::vector<double> out(k.rate_constants.size());
    for (size_t j = 0; j < out.size(); ++j) {
        double lg = 0;
        for (size_t i = 0; i < x.size(); ++i) lg += k.exponents[j][i] * std::log(x[i]);
        out[j] = k.rate_constants[j] * std::exp(lg);
    }
    return out;
}

double separation(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0;
    for (size_t i = 0; i < x.size(); ++i) s = std::max(s, std::fabs(x[i] - y[i]));
    return s;
}

bool all_positive(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double a) { return a > 0 && std::isfinite(a); });
}

}  // namespace

ResidualReport verify_witness(const Network& net, const CollisionWitness& w, double tol) {
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    int n = st.gamma.rows(), m = st.gamma.cols();
    bool augmented = int(w.kinetics.rate_constants.size()) == m + n;
    RatMatrix A = augmented ? st.gamma.hconcat(-RatMatrix::identity(n)) : st.gamma;
    Eigen::MatrixXd Ad = to_eigen(A);
    auto vx = powlaw_rates(w.kinetics, w.x), vy = powlaw_rates(w.kinetics, w.y);
    double residual = 0;
    for (int i = 0; i < n; ++i) {
        std::vector<double> terms(A.cols());
        for (int j = 0; j < A.cols(); ++j) terms[j] = Ad(i, j) * (vy[j] - vx[j]);
        residual = std::max(residual, std::fabs(kahan_sum(terms)));
    }
    double sep = separation(w.x, w.y);
    // distance of x - y from the image of the stoichiometric matrix
    Eigen::VectorXd diff(n);
    for (int i = 0; i < n; ++i) diff(i) = w.x[i] - w.y[i];
    Eigen::MatrixXd Gd = to_eigen(st.gamma);
    Eigen::VectorXd proj = Gd * Gd.colPivHouseholderQr().solve(diff);
    double offset = augmented ? 0.0 : (diff - proj).lpNorm<Eigen::Infinity>();
    ResidualReport rep;
    rep.checks = {{"residual", residual}, {"class_offset", offset}, {"separation", sep}};
    rep.pass = residual <= tol && offset <= tol && sep > 1e-12 && all_positive(w.x) && all_positive(w.y) &&
               all_positive(w.kinetics.rate_constants);
    return rep;
}

ResidualReport verify_witness(const Network& net, const EquilibriaPairWitness& w, double tol) {
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    int n = st.gamma.rows(), m = st.gamma.cols();
    Eigen::MatrixXd Gd = to_eigen(st.gamma);
    auto resid = [&](const std::vector<double>& pt) {
        auto v = powlaw_rates(w.kinetics, pt);
        double res = 0;
        for (int i = 0; i < n; ++i) {
            std::vector<double> terms(m);
            for (int j = 0; j < m; ++j) terms[j] = Gd(i, j) * v[j];
            res = std::max(res, std::fabs(kahan_sum(terms)));
        }
        return res;
    };
    double rx = resid(w.x), ry = resid(w.y);
    Eigen::VectorXd diff(n);
    for (int i = 0; i < n; ++i) diff(i) = w.x[i] - w.y[i];
    Eigen::VectorXd proj = Gd * Gd.colPivHouseholderQr().solve(diff);
    double offset = (diff - proj).lpNorm<Eigen::Infinity>();
    double sep = separation(w.x, w.y);
    ResidualReport rep;
    rep.checks = {{"residual_x", rx}, {"residual_y", ry}, {"class_offset", offset}, {"separation", sep}};
    rep.pass = rx <= tol && ry <= tol && offset <= tol && sep > 1e-12 && all_positive(w.x) &&
               all_positive(w.y) && all_positive(w.kinetics.rate_constants);
    return rep;
}

ResidualReport verify_witness(const Network& net, const OpenSystemWitness& w, double tol) {
    StoichTriple st = stoichiometric_matrices(irreversible_expansion(net));
    int n = st.gamma.rows(), m = st.gamma.cols();
    Eigen::MatrixXd Gd = to_eigen(st.gamma);
    auto resid = [&](const std::vector<double>& pt) {
        auto v = powlaw_rates(w.kinetics, pt);
        double res = 0;
        for (int i = 0; i < n; ++i) {
            std::vector<double> terms(m + 2);
            for (int j = 0; j < m; ++j) terms[j] = Gd(i, j) * v[j];
            terms[m] = -w.outflow[i] * pt[i];
            terms[m + 1] = w.inflow[i];
            res = std::max(res, std::fabs(kahan_sum(terms)));
        }
        return res;
    };
    double rx = resid(w.x), ry = resid(w.y);
    double sep = separation(w.x, w.y);
    ResidualReport rep;
    rep.checks = {{"residual_x", rx}, {"residual_y", ry}, {"separation", sep}};
    rep.pass = rx <= tol && ry <= tol && sep > 1e-12 && all_positive(w.x) && all_positive(w.y) &&
               all_positive(w.kinetics.rate_constants) && all_positive(w.outflow) && all_positive(w.inflow);
    return rep;
}

}  // namespace crncert
