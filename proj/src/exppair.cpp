#include "clab/exppair.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <queue>
#include <algorithm>
#include <vector>

namespace clab {

namespace {

const BigRational kHalf{BigInt(1), BigInt(2)};

// Projective action on homogeneous (k, l, 1).
using Matrix = std::array<BigInt, 9>;

Matrix matrix_A() { return {1, 0, 0, 1, 1, 1, 2, 0, 2}; }
Matrix matrix_B() { return {0, 2, -1, 2, 0, 1, 0, 0, 2}; }

Matrix multiply(const Matrix& x, const Matrix& y) {
    Matrix out;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            BigInt acc = 0;
            for (int i = 0; i < 3; ++i) acc += x[r * 3 + i] * y[i * 3 + c];
            out[r * 3 + c] = acc;
        }
    }
    return out;
}

void normalize(Matrix& m) {
    BigInt g = 0;
    for (const auto& e : m) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    for (int i = 6; i < 9; ++i) {
        if (m[i] != 0) {
            if (m[i] < 0) g = -g;
            break;
        }
    }
    if (g != 0 && g != 1) {
        for (auto& e : m) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
    }
}

struct Homogeneous {
    BigInt x, y, z;
};

// Triangle vertices (0, 1/2), (0, 1), (1/2, 1/2).
const std::array<Homogeneous, 3>& vertices() {
    static const std::array<Homogeneous, 3> v{{{0, 1, 2}, {0, 1, 1}, {1, 1, 2}}};
    return v;
}

Homogeneous image(const Matrix& m, const Homogeneous& v) {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
}

// f at the homogeneous point (x : y : z).
BigRational f_at(const Homogeneous& h) {
    return {2 * h.x + h.z, 4 * h.z + 2 * h.x - 2 * h.y};
}

BigRational exact_bound(const Matrix& m) {
    BigRational lo = f_at(image(m, vertices()[0]));
    for (std::size_t i = 1; i < 3; ++i) lo = std::min(lo, f_at(image(m, vertices()[i])));
    return lo;
}

// Same projective action in extended precision, rescaled so the largest entry is 1.
using FastMatrix = std::array<long double, 9>;

FastMatrix fast_multiply(const FastMatrix& x, const Matrix& y) {
    FastMatrix out{};
    long double scale = 0.0L;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            long double acc = 0.0L;
            for (int i = 0; i < 3; ++i) acc += x[r * 3 + i] * y[i * 3 + c].get_si();
            out[r * 3 + c] = acc;
            scale = std::max(scale, std::fabs(acc));
        }
    }
    for (auto& e : out) e /= scale;
    return out;
}

long double fast_f(const FastMatrix& m, int v) {
    static constexpr long double kVerts[3][3] = {{0, 1, 2}, {0, 1, 1}, {1, 1, 2}};
    const auto* h = kVerts[v];
    const long double x = m[0] * h[0] + m[1] * h[1] + m[2] * h[2];
    const long double y = m[3] * h[0] + m[4] * h[1] + m[5] * h[2];
    const long double z = m[6] * h[0] + m[7] * h[1] + m[8] * h[2];
    return (2 * x + z) / (4 * z + 2 * x - 2 * y);
}

long double fast_bound(const FastMatrix& m) {
    return std::min({fast_f(m, 0), fast_f(m, 1), fast_f(m, 2)});
}

struct Node {
    std::int64_t parent;
    char letter;
    std::uint32_t depth;
};

struct Open {
    long double bound;
    std::uint32_t depth;
    std::uint64_t serial;
    std::uint64_t node;
    FastMatrix matrix;
};

struct OpenOrder {
    bool operator()(const Open& x, const Open& y) const {
        if (x.bound != y.bound) return x.bound > y.bound;
        if (x.depth != y.depth) return x.depth > y.depth;
        return x.serial > y.serial;
    }
};

std::string word_of(const std::vector<Node>& nodes, std::int64_t idx) {
    std::string out;
    while (idx > 0) {
        out.push_back(nodes[static_cast<std::size_t>(idx)].letter);
        idx = nodes[static_cast<std::size_t>(idx)].parent;
    }
    return {out.rbegin(), out.rend()};
}

}  // namespace

std::string parse_word(std::string_view text) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c != 'A' && c != 'B') {
            throw WordSyntaxError("malformed word '" + std::string(text) + "': unexpected '" + std::string(1, c) + "'");
        }
        ++i;
        if (i < text.size() && text[i] == '^') {
            ++i;
            if (i >= text.size() || std::isdigit(static_cast<unsigned char>(text[i])) == 0) {
                throw WordSyntaxError("malformed word '" + std::string(text) + "': '^' needs an exponent");
            }
        }
        std::size_t count = 1;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) {
            count = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) {
                count = count * 10 + static_cast<std::size_t>(text[i] - '0');
                if (count > 100000) throw WordSyntaxError("exponent too large in '" + std::string(text) + "'");
                ++i;
            }
            if (count == 0) throw WordSyntaxError("zero exponent in '" + std::string(text) + "'");
        }
        out.append(count, c);
    }
    return out;
}

std::string compress_word(std::string_view letters) {
    std::string out;
    std::size_t i = 0;
    while (i < letters.size()) {
        std::size_t j = i;
        while (j < letters.size() && letters[j] == letters[i]) ++j;
        out.push_back(letters[i]);
        if (j - i > 1) out += std::to_string(j - i);
        i = j;
    }
    return out;
}

ExponentPair trivial_pair() { return {BigRational(0), BigRational(1), ""}; }

bool in_exponent_region(const BigRational& k, const BigRational& l) {
    return k.sign() >= 0 && k <= kHalf && kHalf <= l && l <= BigRational(1);
}

ExponentPair apply_A(const ExponentPair& pair) {
    const BigRational den = BigRational(2) * pair.k + BigRational(2);
    return {pair.k / den, (pair.k + pair.l + BigRational(1)) / den, "A" + pair.word};
}

ExponentPair apply_B(const ExponentPair& pair) {
    return {pair.l - kHalf, pair.k + kHalf, "B" + pair.word};
}

ExponentPair apply_word(std::string_view letters, const ExponentPair& seed) {
    ExponentPair out = seed;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        if (*it == 'A') {
            out = apply_A(out);
        } else if (*it == 'B') {
            out = apply_B(out);
        } else {
            throw WordSyntaxError("word letters must be A or B");
        }
    }
    return out;
}

BigRational objective_f(const BigRational& k, const BigRational& l) {
    const BigRational den = BigRational(4) + BigRational(2) * k - BigRational(2) * l;
    if (den.sign() <= 0) throw std::domain_error("objective f: 4 + 2k - 2l must be positive");
    return (BigRational(2) * k + BigRational(1)) / den;
}

std::array<std::optional<PowerTerm>, 2> mu_exponents(const ExponentPair& pair) {
    const BigRational two_k = BigRational(2) * pair.k;
    const BigRational two_l = BigRational(2) * pair.l;
    const BigRational d1 = BigRational(4) + two_k - two_l;
    const BigRational d2 = BigRational(2) + two_k - two_l;
    if (d1.sign() <= 0 || d2.sign() < 0) throw std::domain_error("mu threshold undefined outside the region");
    std::array<std::optional<PowerTerm>, 2> out;
    out[0] = PowerTerm{-(BigRational(1) / d1), (two_k + BigRational(1)) / d1};
    if (d2.sign() > 0) out[1] = PowerTerm{-(BigRational(1) / d2), two_k / d2};
    return out;
}

double mu_threshold(const ExponentPair& pair, double Delta, double q) {
    if (!(Delta > 0.0 && Delta <= 1.0)) throw std::invalid_argument("Delta must lie in (0, 1]");
    if (!(q >= 1.0)) throw std::invalid_argument("q must be >= 1");
    const auto terms = mu_exponents(pair);
    double best = 0.0;
    for (const auto& term : terms) {
        if (!term) {
            // Delta^(-1/0): the branch never closes for Delta < 1 and is vacuous at Delta = 1.
            if (Delta < 1.0) return std::numeric_limits<double>::infinity();
            continue;
        }
        const double value =
            std::pow(Delta, term->delta_exponent.to_double()) * std::pow(q, term->q_exponent.to_double());
        best = std::max(best, value);
    }
    return best;
}

SearchResult search_min_f(std::uint64_t node_budget) {
    if (node_budget < 1) throw std::invalid_argument("node budget must be >= 1");
    const Matrix letters[2] = {matrix_A(), matrix_B()};

    std::vector<Node> nodes{{-1, 0, 0}};
    std::priority_queue<Open, std::vector<Open>, OpenOrder> open;

    SearchResult result;
    long double best = 0.5L;
    std::int64_t best_node = 0;

    const FastMatrix identity{1, 0, 0, 0, 1, 0, 0, 0, 1};
    std::uint64_t serial = 0;
    open.push({fast_bound(identity), 0, serial++, 0, identity});
    while (!open.empty() && result.nodes_expanded < node_budget) {
        if (open.top().bound >= best) break;
        const Open current = open.top();
        open.pop();
        ++result.nodes_expanded;
        const char last = nodes[current.node].letter;
        for (int li = 0; li < 2; ++li) {
            if (li == 1 && last == 'B') continue;  // W B B = W
            const FastMatrix child = fast_multiply(current.matrix, letters[li]);
            const auto idx = static_cast<std::int64_t>(nodes.size());
            nodes.push_back({static_cast<std::int64_t>(current.node), li == 0 ? 'A' : 'B', current.depth + 1});
            const long double value = fast_f(child, 1);
            if (value < best) {
                best = value;
                best_node = idx;
            }
            const long double bound = fast_bound(child);
            if (bound < best) open.push({bound, current.depth + 1, serial++, static_cast<std::uint64_t>(idx), child});
        }
    }

    result.best_pair = apply_word(word_of(nodes, best_node), trivial_pair());
    result.best_f = objective_f(result.best_pair);
    result.frontier_bound = result.best_f;
    if (!open.empty()) {
        Matrix m{1, 0, 0, 0, 1, 0, 0, 0, 1};
        const std::string w = word_of(nodes, static_cast<std::int64_t>(open.top().node));
        for (const char c : w) {
            m = multiply(m, letters[c == 'A' ? 0 : 1]);
            normalize(m);
        }
        result.frontier_bound = std::min(exact_bound(m), result.best_f);
    }
    return result;
}

std::string_view bracket_word() {
    static const std::string word = parse_word("ABABABA3BA2BABABA2BABABA");
    return word;
}

Bracket remark_bracket() {
    Bracket out;
    out.lower_pair = apply_word(bracket_word(), ExponentPair{BigRational(0), kHalf, ""});
    out.upper_pair = apply_word(bracket_word(), trivial_pair());
    out.f_lower = objective_f(out.lower_pair);
    out.f_upper = objective_f(out.upper_pair);
    return out;
}

std::string format_pair(const ExponentPair& pair) { return pair.k.str() + "," + pair.l.str(); }

}  // namespace clab
