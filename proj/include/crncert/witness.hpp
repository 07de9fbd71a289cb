#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crncert/concord.hpp"
#include "crncert/crn.hpp"

namespace crncert {

// Numeric search failed (degenerate root-find, bad conditioning, budget
// exhausted).  Never changes a structural verdict.
struct ConstructionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rates v_j(x) = rate_constants[j] * prod_i x_i^{exponents[j][i]}; one row per
// reaction of the irreversible expansion.
struct PowerLawKinetics {
    std::vector<std::vector<double>> exponents;  // m x n
    std::vector<double> rate_constants;          // m, positive
};

// Two distinct positive states with equal reaction-driven velocity.
struct CollisionWitness {
    PowerLawKinetics kinetics;
    std::vector<double> x, y;
    double residual;      // max-norm of Gbar E x^{M^t} - Gbar E y^{M^t}
    double class_offset;  // max-norm distance of x - y from im Gbar
};

// Two distinct positive equilibria on one stoichiometry class.
struct EquilibriaPairWitness {
    PowerLawKinetics kinetics;
    std::vector<double> x, y;
    double residual_x, residual_y;  // max-norms of Gbar E x^{M^t}, same at y
    double class_offset;
};

// Two distinct positive equilibria of the flow-augmented system
// c + Gbar E x^{M^t} - D x.
struct OpenSystemWitness {
    PowerLawKinetics kinetics;
    std::vector<double> outflow;  // positive diagonal D
    std::vector<double> inflow;   // positive vector c
    std::vector<double> x, y;
    double residual_x, residual_y;
};

// Positive-diagonal interpolation along which the reduced determinant changes
// sign; kept for replay/diagnostics.
struct ScalingPath {
    std::vector<double> d_a, d_b;
    double t_star;
};

// Nullopt iff the sign classification of the minor products forbids a
// collision (single-signed case); throws ConstructionFailed on numeric
// failure.
std::optional<CollisionWitness> collision_witness(const Network& net, const RatMatrix& M,
                                                  double tol = 1e-9, unsigned seed = 1);

// Collision of the flow-augmented map Gbar E x^{M^t} - D'' x; nullopt iff all
// minor products are compatibly signed at every size.
std::optional<CollisionWitness> open_collision_witness(const Network& net, const RatMatrix& M,
                                                       double tol = 1e-9, unsigned seed = 1);

// Equilibrium pair under kinetics whose exponents share the sign pattern of
// the reactant matrix.  Nullopt when the preconditions fail (network not
// discordant, or no positive kernel vector).  lambda_scale > 0 rescales the
// exponent magnitudes without changing the verdict.
std::optional<EquilibriaPairWitness> class_multistationarity_witness(const Network& net, double tol = 1e-9,
                                                                     unsigned seed = 1,
                                                                     double lambda_scale = 1.0);

// Equilibrium pair for the open system built from a verified incompatibility
// certificate; M defaults to the reactant matrix of the expansion.
OpenSystemWitness open_multistationarity_witness(const Network& net, const IncompatibilityCertificate& cert,
                                                 std::optional<RatMatrix> M = std::nullopt,
                                                 double tol = 1e-9);

struct ResidualReport {
    bool pass = false;
    std::vector<std::pair<std::string, double>> checks;  // name -> value (tolerance-bounded)
};

ResidualReport verify_witness(const Network& net, const CollisionWitness& w, double tol = 1e-9);
ResidualReport verify_witness(const Network& net, const EquilibriaPairWitness& w, double tol = 1e-9);
ResidualReport verify_witness(const Network& net, const OpenSystemWitness& w, double tol = 1e-9);

}  // namespace crncert
