/* vpa.hh -- visibly pushdown automata: parsing, exact semantics, relation algebra */

#ifndef VPLT_VPA_HH_
#define VPLT_VPA_HH_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vplt/bitmatrix.hh"

namespace vplt {

enum class SymClass { Push, Pop, Neutral };

/// State count cap. Tester constants contain 2^{m^2}, so anything beyond toy
/// sizes is out of reach regardless; the cap keeps relation sets and pair
/// state spaces small and cheap.
inline constexpr std::size_t kMaxStates = 16;

struct VpaParseError : std::runtime_error {
    VpaParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

/// A visibly pushdown automaton. Nondeterministic, with sets of initial and
/// final states. Symbols and stack symbols are interned to dense ids; the
/// class of a symbol (push/pop/neutral) is implied by the transitions that
/// mention it and a symbol may be used in only one class.
class Vpa {
public:
    std::size_t m = 0;

    std::vector<std::string> symbols;       // symbol id -> token
    std::vector<SymClass> symbol_class;     // per symbol id
    std::vector<std::string> stack_symbols; // stack id -> token

    std::vector<int> initial;
    std::vector<int> finals;

    // Transition relations as boolean matrices over states, so that word
    // semantics reduce to matrix algebra. Only the class-matching table is
    // populated for a given symbol.
    std::vector<std::vector<Relation>> push_rel; // [symbol][stack]: p -> q pushing stack
    std::vector<std::vector<Relation>> pop_rel;  // [symbol][stack]: p -> q popping stack
    std::vector<Relation> neutral_rel;           // [symbol]

    std::size_t num_symbols() const { return symbols.size(); }
    std::size_t num_stack() const { return stack_symbols.size(); }

    bool is_push(int sym) const { return symbol_class[sym] == SymClass::Push; }
    bool is_pop(int sym) const { return symbol_class[sym] == SymClass::Pop; }
    bool is_neutral(int sym) const { return symbol_class[sym] == SymClass::Neutral; }

    int symbol_id(const std::string& token) const; // -1 if unknown

    bool is_initial(int q) const;
    bool is_final(int q) const;

    /// True iff r intersects initial x final.
    bool relation_accepts(const Relation& r) const;

    /// Union over stack symbols of push(a) composed with inner and pop(b):
    /// the relation contributed by one matched level.
    Relation surround(int push_sym, const Relation& inner, int pop_sym) const;

    /// Relation of all balanced words: least fixpoint of identity, neutral
    /// steps, composition, and push/pop surrounding.
    Relation balanced_reach() const;

    /// Max over pairs (p,q) connected by a balanced word of the minimal
    /// length of such a word; 0 if only trivial pairs exist.
    std::size_t sigma_diameter() const;

    void validate() const; // throws std::invalid_argument on broken invariants
};

Relation compose(const Relation& r1, const Relation& r2);

/// Parses the line-oriented machine description:
///   states N / initial i j ... / final i j ... / stack g1 g2 ...
///   push <sym> <p> <q> <gamma> / pop <sym> <p> <gamma> <q> / neutral <sym> <p> <q>
/// '#' starts a comment. Throws VpaParseError with the offending line.
Vpa parse_vpa(const std::string& text);

/// Exact set of u-transitions of a balanced word, where letters may be base
/// symbols (ids >= 0 into vpa.symbols) or relation letters supplied through
/// `relations` (letter value -(i+1) refers to relations[i]). Throws on
/// unbalanced input or unknown symbols.
Relation relation_of_balanced(const Vpa& vpa, const std::vector<int>& word,
                              const std::vector<Relation>& relations = {});

/// Acceptance: balanced and initial x final intersects the word relation.
/// Unbalanced words are simply not accepted.
bool accepts(const Vpa& vpa, const std::vector<int>& word);

/// Maps whitespace-separated tokens to symbol ids. Throws std::invalid_argument
/// on unknown tokens.
std::vector<int> tokens_to_word(const Vpa& vpa, const std::vector<std::string>& tokens);

} // namespace vplt

#endif // VPLT_VPA_HH_
