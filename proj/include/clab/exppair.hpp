#pragma once

// Exact exponent-pair calculus generated by the A and B processes.
//
// Words are read right to left: the rightmost letter acts on the seed
// first, so "AB" applied to (0, 1) is A(B(0, 1)).

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "clab/arith.hpp"

namespace clab {

class WordSyntaxError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Expands exponent shorthand ("ABA2B", "ABA^2B") into plain letters ("ABAAB").
std::string parse_word(std::string_view text);

/// Inverse of parse_word for display: runs of two or more letters become "A3".
std::string compress_word(std::string_view letters);

struct ExponentPair {
    BigRational k;
    BigRational l;
    std::string word;  // plain letters, leftmost applied last; empty for seeds
};

/// The trivial pair (0, 1).
ExponentPair trivial_pair();

/// 0 <= k <= 1/2 <= l <= 1.
bool in_exponent_region(const BigRational& k, const BigRational& l);

/// (k/(2k+2), (k+l+1)/(2k+2)); prepends 'A' to the word.
ExponentPair apply_A(const ExponentPair& pair);

/// (l - 1/2, k + 1/2); prepends 'B' to the word.
ExponentPair apply_B(const ExponentPair& pair);

/// Applies the letters right to left. The seed may lie outside the region (e.g. (0, 1/2)).
ExponentPair apply_word(std::string_view letters, const ExponentPair& seed);

/// (2k+1)/(4+2k-2l). Throws std::domain_error when the denominator is <= 0.
BigRational objective_f(const BigRational& k, const BigRational& l);
inline BigRational objective_f(const ExponentPair& pair) { return objective_f(pair.k, pair.l); }

/// Exponents (of Delta, of q) of one branch Delta^a q^b of the threshold mu_{k,l}.
struct PowerTerm {
    BigRational delta_exponent;
    BigRational q_exponent;
};

/// Both branches: (-1/(4+2k-2l), (2k+1)/(4+2k-2l)) and (-1/(2+2k-2l), 2k/(2+2k-2l)).
/// The second is nullopt when 2+2k-2l = 0, which happens only at (0, 1).
std::array<std::optional<PowerTerm>, 2> mu_exponents(const ExponentPair& pair);

/// max over the branches of Delta^a q^b. A missing branch at Delta < 1 is unbounded (+inf).
double mu_threshold(const ExponentPair& pair, double Delta, double q);

struct SearchResult {
    ExponentPair best_pair;
    BigRational best_f;
    std::uint64_t nodes_expanded = 0;
    /// Smallest lower bound still open; equals best_f once the frontier is exhausted.
    BigRational frontier_bound;
};

/// Best-first branch and bound over words applied to (0, 1).
///
/// A node is a word W; its children are WA and WB (one more transform applied
/// to the seed first). Every pair below W is W(P) with P in the triangle
/// k >= 0, l >= 1/2, k + l <= 1, which A and B map into itself, and f o W is
/// linear-fractional there, so min of f(W(v)) over the three vertices bounds
/// the whole subtree. Nodes are ordered by that bound with depth and creation
/// order as tie-breaks; children ending in BB are skipped since B is an involution.
/// The frontier runs on rescaled extended-precision matrices. Reported values
/// are recomputed exactly from the words.
SearchResult search_min_f(std::uint64_t node_budget);

/// The fixed word of the bracketing computation, in plain letters.
std::string_view bracket_word();

struct Bracket {
    ExponentPair lower_pair;  // word applied to the formal seed (0, 1/2)
    ExponentPair upper_pair;  // word applied to (0, 1)
    BigRational f_lower;
    BigRational f_upper;
};

Bracket remark_bracket();

/// "k,l" in reduced fractions, e.g. "1/9,13/18".
std::string format_pair(const ExponentPair& pair);

}  // namespace clab
