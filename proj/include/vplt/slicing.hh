/* slicing.hh -- the finite automaton reading a peak from both ends at once */

#ifndef VPLT_SLICING_HH_
#define VPLT_SLICING_HH_

#include <cstdint>
#include <memory>
#include <vector>

#include "vplt/bitmatrix.hh"
#include "vplt/vpa.hh"
#include "vplt/weighted.hh"

namespace vplt {

/// A letter of the sliced form of a peak: a (push,pop) pair read from the two
/// ends of one nesting level, or a one-sided neutral letter (base symbol or
/// relation letter).
struct SlicedLetter {
    enum class Kind { Left, Right, Pair };
    Kind kind = Kind::Left;
    int a_sym = -1; // Pair: push symbol
    int b_sym = -1; // Pair: pop symbol
    int sym = -1;   // Left/Right: neutral symbol, or -1 with rel set
    std::shared_ptr<const Relation> rel;
    std::uint64_t weight = 1;

    bool operator==(const SlicedLetter& o) const {
        if (kind != o.kind || weight != o.weight) return false;
        if (kind == Kind::Pair) return a_sym == o.a_sym && b_sym == o.b_sym;
        if (sym != o.sym) return false;
        if ((rel != nullptr) != (o.rel != nullptr)) return false;
        return rel == nullptr || *rel == *o.rel;
    }
};

/// Finite automaton over pair states (p,q), p indexing the forward run and q
/// the backward run of the machine. One-step transition tables are boolean
/// matrices over the m*m pair states.
struct SlicingNfa {
    std::size_t m = 0;       // base machine state count
    std::size_t nstates = 0; // m*m

    std::vector<std::vector<BitMatrix>> pair_step; // [push sym][pop sym]
    std::vector<BitMatrix> left_step;              // [neutral sym]
    std::vector<BitMatrix> right_step;             // [neutral sym]
    std::vector<BitMatrix> pair_step_any_pop;      // [push sym]: pop unknown
    std::vector<BitMatrix> pair_step_any_push;     // [pop sym]: push unknown

    BitMatrix base_reach;  // reflexive-transitive closure over base letters
    BitMatrix gap_closure; // closure including relation-letter steps
    std::size_t diameter = 0;

    std::vector<char> initial; // over pair states
    std::vector<char> finals;

    std::size_t pair_index(std::size_t p, std::size_t q) const { return p * m + q; }

    /// Step of a left-side relation letter: (p,q) -> (p',q) when r(p,p').
    BitMatrix left_relation_step(const Relation& r) const;
    /// Step of a right-side relation letter: (p,q) -> (p,q') when r(q',q).
    BitMatrix right_relation_step(const Relation& r) const;

    BitMatrix letter_step(const SlicedLetter& l) const;
};

SlicingNfa build_slicing(const Vpa& vpa);

/// Reachability over base sliced letters and the largest finite shortest-path
/// length between connected pair states.
struct ReachResult {
    BitMatrix reach;
    std::size_t diameter;
};
ReachResult reach_and_diameter(const SlicingNfa& nfa);

/// The sliced form of a peak word: per nesting level, left neutrals, then
/// right neutrals, then the (push,pop) pair. Throws if the word is not a
/// balanced peak.
std::vector<SlicedLetter> slice_peak(const Vpa& vpa, const std::vector<int>& word);

/// Weighted variant used by the distance oracle; letters carry weights.
std::vector<SlicedLetter> slice_peak_weighted(const Vpa& vpa, const WeightedWord& word);

bool slicing_accepts(const SlicingNfa& nfa, const std::vector<SlicedLetter>& sliced);

} // namespace vplt

#endif // VPLT_SLICING_HH_
