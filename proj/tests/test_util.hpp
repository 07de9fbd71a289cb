#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "crncert/crn.hpp"
#include "crncert/linalg.hpp"

namespace testutil {

using namespace crncert;

inline Network load_corpus(const std::string& name) {
    std::ifstream in(std::string(CORPUS_DIR) + "/" + name + ".crn");
    if (!in) throw std::runtime_error("missing corpus file: " + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str());
}

inline const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = {
        "two_reversible",   "open_binding",          "binding_no_exchange", "double_binding",
        "double_binding_flows", "triangle_complexes", "futile_cycle",       "catalytic_loop",
        "bounded_no_equilibria", "catalyst_fixed",    "partial_reversible", "fully_irreversible",
        "autocatalytic"};
    return names;
}

// small random rational in [-max, max], denominator <= 9
inline Rat random_rat(std::mt19937& rng, int max = 9) {
    std::uniform_int_distribution<int> num(-max, max), den(1, 9);
    return Rat(num(rng), den(rng));
}

inline Rat random_positive_rat(std::mt19937& rng, int max = 9) {
    std::uniform_int_distribution<int> num(1, max), den(1, 9);
    return Rat(num(rng), den(rng));
}

inline RatMatrix random_matrix(std::mt19937& rng, int rows, int cols, int max = 9) {
    RatMatrix A(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) A.at(i, j) = random_rat(rng, max);
    return A;
}

// random network: small integer complexes, mixed reversibility
inline Network random_network(std::mt19937& rng, int max_species = 8, int max_reactions = 6) {
    std::uniform_int_distribution<int> ns(2, max_species), nr(1, max_reactions);
    int n = ns(rng), m = nr(rng);
    std::uniform_int_distribution<int> coin(0, 1), coeff(1, 2), pick(0, n - 1), sz(0, 2);
    std::string text;
    for (int j = 0; j < m; ++j) {
        auto side = [&]() {
            int k = sz(rng);
            std::string s;
            for (int t = 0; t < k; ++t) {
                if (!s.empty()) s += " + ";
                int c = coeff(rng);
                if (c != 1) s += std::to_string(c);
                s += "S" + std::to_string(pick(rng));
            }
            return s.empty() ? std::string("0") : s;
        };
        std::string l = side(), r = side();
        if (l == "0" && r == "0") r = "S0";
        text += l + (coin(rng) ? " <-> " : " -> ") + r + "\n";
    }
    return parse_network(text);
}

inline RatMatrix negative_part(const RatMatrix& G) {
    RatMatrix out(G.rows(), G.cols());
    for (int i = 0; i < G.rows(); ++i)
        for (int j = 0; j < G.cols(); ++j)
            if (G.at(i, j) < 0) out.at(i, j) = -G.at(i, j);
    return out;
}

}  // namespace testutil
