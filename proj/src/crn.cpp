#include "crncert/crn.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace crncert {

namespace {

struct Token {
    enum Kind { IDENT, NUMBER, PLUS, ARROW_IRR, ARROW_REV, END } kind;
    std::string text;
    int column;
};

class LineLexer {
public:
    LineLexer(const std::string& line, int line_no) : s_(line), line_no_(line_no) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        int col = int(pos_) + 1;
        if (pos_ >= s_.size()) return {Token::END, "", col};
        char c = s_[pos_];
        if (c == '+') {
            ++pos_;
            return {Token::PLUS, "+", col};
        }
        if (c == '<') {
            size_t start = pos_;
            ++pos_;
            size_t dashes = 0;
            while (pos_ < s_.size() && s_[pos_] == '-') { ++dashes; ++pos_; }
            if ((dashes == 1 || dashes == 2) && pos_ < s_.size() && s_[pos_] == '>') {
                ++pos_;
                return {Token::ARROW_REV, s_.substr(start, pos_ - start), col};
            }
            throw ParseError(line_no_, col, "malformed arrow");
        }
        if (c == '-') {
            size_t start = pos_;
            size_t dashes = 0;
            while (pos_ < s_.size() && s_[pos_] == '-') { ++dashes; ++pos_; }
            if ((dashes == 1 || dashes == 2) && pos_ < s_.size() && s_[pos_] == '>') {
                ++pos_;
                return {Token::ARROW_IRR, s_.substr(start, pos_ - start), col};
            }
            throw ParseError(line_no_, col, "malformed arrow");
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    throw ParseError(line_no_, int(pos_) + 1, "expected denominator digits");
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            }
            return {Token::NUMBER, s_.substr(start, pos_ - start), col};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            ++pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return {Token::IDENT, s_.substr(start, pos_ - start), col};
        }
        throw ParseError(line_no_, col, std::string("unexpected character '") + c + "'");
    }

private:
    const std::string& s_;
    int line_no_;
    size_t pos_ = 0;
};

Rat parse_coeff(const std::string& text, int line, int col) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(Int(text));
    Int num(text.substr(0, slash)), den(text.substr(slash + 1));
    if (den == 0) throw ParseError(line, col, "zero denominator");
    return Rat(num, den);
}

}  // namespace

Network parse_network(const std::string& text) {
    Network net;
    std::map<std::string, int> species_idx;
    std::map<std::string, std::string> lower_seen;  // lowercase -> first casing

    auto species_of = [&](const std::string& name, int line, int col) {
        std::string low = name;
        std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return char(std::tolower(c)); });
        auto seen = lower_seen.find(low);
        if (seen != lower_seen.end() && seen->second != name)
            throw ParseError(line, col, "species '" + name + "' differs only in case from '" + seen->second + "'");
        lower_seen.emplace(low, name);
        auto it = species_idx.find(name);
        if (it != species_idx.end()) return it->second;
        int idx = int(net.species.size());
        net.species.push_back(name);
        species_idx.emplace(name, idx);
        return idx;
    };

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        std::string line = (hash == std::string::npos) ? raw : raw.substr(0, hash);
        bool blank = std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
        if (blank) continue;

        LineLexer lex(line, line_no);
        Token tok = lex.next();

        auto parse_complex = [&](Token& t) {
            Complex c;
            while (true) {
                Rat coeff = 1;
                if (t.kind == Token::NUMBER) {
                    if (t.text == "0") {
                        // empty complex; must stand alone as the whole side
                        Token after = lex.next();
                        if (after.kind == Token::PLUS)
                            throw ParseError(line_no, after.column, "'0' complex cannot take '+'");
                        t = after;
                        if (!c.empty()) throw ParseError(line_no, t.column, "'0' inside a complex");
                        return c;
                    }
                    coeff = parse_coeff(t.text, line_no, t.column);
                    if (coeff <= 0) throw ParseError(line_no, t.column, "coefficient must be positive");
                    t = lex.next();
                    if (t.kind != Token::IDENT) throw ParseError(line_no, t.column, "expected species name after coefficient");
                }
                if (t.kind != Token::IDENT) throw ParseError(line_no, t.column, "expected species name");
                int idx = species_of(t.text, line_no, t.column);
                c[idx] += coeff;
                t = lex.next();
                if (t.kind != Token::PLUS) return c;
                t = lex.next();
            }
        };

        Reaction rxn;
        rxn.left = parse_complex(tok);
        if (tok.kind != Token::ARROW_IRR && tok.kind != Token::ARROW_REV)
            throw ParseError(line_no, tok.column, "expected reaction arrow");
        rxn.reversible = (tok.kind == Token::ARROW_REV);
        tok = lex.next();
        rxn.right = parse_complex(tok);
        if (tok.kind != Token::END) throw ParseError(line_no, tok.column, "trailing input after reaction");
        if (rxn.left.empty() && rxn.right.empty())
            throw ParseError(line_no, 1, "reaction between two empty complexes");
        rxn.label = "R" + std::to_string(net.reactions.size() + 1);
        net.reactions.push_back(std::move(rxn));
    }
    return net;
}

static std::string render_complex(const Network& net, const Complex& c) {
    if (c.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [idx, mult] : c) {
        if (!first) out += " + ";
        first = false;
        if (mult != 1) out += to_string(mult);
        out += net.species[idx];
    }
    return out;
}

std::string render_reaction(const Reaction& r, const Network& net) {
    return render_complex(net, r.left) + (r.reversible ? " <-> " : " -> ") + render_complex(net, r.right);
}

std::string render_network(const Network& net) {
    std::string out;
    for (const Reaction& r : net.reactions) {
        out += render_reaction(r, net);
        out += '\n';
    }
    return out;
}

StoichTriple stoichiometric_matrices(const Network& net) {
    int n = int(net.species.size()), m = int(net.reactions.size());
    StoichTriple t{RatMatrix(n, m), RatMatrix(n, m), RatMatrix(n, m)};
    for (int j = 0; j < m; ++j) {
        for (const auto& [i, mult] : net.reactions[j].left) t.gamma_left.at(i, j) = mult;
        for (const auto& [i, mult] : net.reactions[j].right) t.gamma_right.at(i, j) = mult;
        for (int i = 0; i < n; ++i) t.gamma.at(i, j) = t.gamma_right.at(i, j) - t.gamma_left.at(i, j);
    }
    return t;
}

Network irreversible_expansion(const Network& net) {
    Network out;
    out.species = net.species;
    for (const Reaction& r : net.reactions) {
        if (!r.reversible) {
            out.reactions.push_back(r);
            continue;
        }
        Reaction fwd{r.left, r.right, false, r.label + "f"};
        Reaction bwd{r.right, r.left, false, r.label + "b"};
        out.reactions.push_back(std::move(fwd));
        out.reactions.push_back(std::move(bwd));
    }
    return out;
}

SignPatternMatrix rate_pattern(const Network& net) {
    int n = int(net.species.size()), m = int(net.reactions.size());
    SignPatternMatrix P(m, n);
    for (int j = 0; j < m; ++j) {
        const Reaction& r = net.reactions[j];
        for (int i = 0; i < n; ++i) {
            bool on_left = r.left.count(i) > 0, on_right = r.right.count(i) > 0;
            if (!r.reversible) {
                P.at(j, i) = on_left ? SignEntry::POS : SignEntry::ZERO;
            } else if (on_left && on_right) {
                P.at(j, i) = SignEntry::ANY;
            } else if (on_left) {
                P.at(j, i) = SignEntry::POS;
            } else if (on_right) {
                P.at(j, i) = SignEntry::NEG;
            } else {
                P.at(j, i) = SignEntry::ZERO;
            }
        }
    }
    return P;
}

NetworkPredicates network_predicates(const Network& net) {
    bool simple = true, all_rev = true, all_irr = true;
    for (const Reaction& r : net.reactions) {
        for (const auto& [i, mult] : r.left)
            if (r.right.count(i)) simple = false;
        (r.reversible ? all_irr : all_rev) = false;
    }
    return {simple, simple && all_rev, all_irr};
}

}  // namespace crncert
