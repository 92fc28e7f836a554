/* generators.hh -- fixed test machines and input-stream generators */

#ifndef VPLT_GENERATORS_HH_
#define VPLT_GENERATORS_HH_

#include <cstddef>
#include <vector>

#include "vplt/rng.hh"
#include "vplt/vpa.hh"

namespace vplt {

/// The 3-state machine for the set-disjointness peak language Disj: words
/// a* x(1) a* ... a* x(j) a* y(j)~ a* ... y(1)~ a* with x(i), y(i) in {0,1}
/// and never x(i) = y(i) = 1. Pushes 0/1, pops 0~/1~, neutral a.
Vpa disj_machine();

/// 2-state machine for nonempty balanced parentheses: push (, pop ).
Vpa paren_machine();

/// 4-state nondeterministic machine with two neutral symbols and two stack
/// symbols; exercises nondeterministic pushes and state-splitting neutrals.
Vpa four_state_machine();

/// Random member of Disj of length exactly n with j matched pairs: random
/// non-violating (x, y) and randomly distributed a-padding. Self-checked
/// against the exact recognizer. Requires n >= 2j.
std::vector<int> gen_disj_member(const Vpa& disj, std::size_t n, std::size_t j,
                                 RandomSource& rng);

/// The far instance 1^j a^(n-2j) 1~^j: every matched pair violates
/// disjointness, and repairing a violating pair costs at least 2 edits, so
/// bdist to Disj is >= 2j. Requires n >= 2j.
std::vector<int> gen_disj_far(const Vpa& disj, std::size_t n, std::size_t j);

/// Uniformly random balanced word of length n over the machine's alphabet
/// (membership not required). Throws when no balanced word of length n
/// exists over the alphabet.
std::vector<int> gen_random_balanced(const Vpa& vpa, std::size_t n,
                                     RandomSource& rng);

/// Random members of L(vpa) of exact length, sampled by a length-indexed
/// table of realizable word relations and a backward-filtered random
/// derivation. Table construction is O(n^2) times the relation-set sizes;
/// meant for desk-scale lengths.
class MemberSampler {
public:
    MemberSampler(const Vpa& vpa, std::size_t max_len);

    std::size_t max_len() const { return rels_.size() - 1; }
    bool has_member(std::size_t n) const;

    /// Member of length exactly n; self-checked. Throws std::invalid_argument
    /// when L(vpa) has no word of that length.
    std::vector<int> sample(std::size_t n, RandomSource& rng) const;

private:
    std::vector<int> sample_rel(std::size_t len, const Relation& target,
                                RandomSource& rng) const;

    const Vpa& vpa_;
    std::vector<std::vector<Relation>> rels_; // rels_[l]: realized by length l
};

} // namespace vplt

#endif // VPLT_GENERATORS_HH_
