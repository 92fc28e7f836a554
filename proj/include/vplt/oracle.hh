/* oracle.hh -- brute-force ground truth: balanced-edit distance, language
   distance, configuration-set acceptance, exact sampler distributions */

#ifndef VPLT_ORACLE_HH_
#define VPLT_ORACLE_HH_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vplt/frac.hh"
#include "vplt/rng.hh"
#include "vplt/slicing.hh"
#include "vplt/vpa.hh"
#include "vplt/weighted.hh"

namespace vplt {

/// One node of the nested-word forest of a balanced word: a neutral leaf, or
/// a matched push/pop pair enclosing a child forest. Flattening the forest in
/// order reproduces the word.
struct ForestNode {
    WeightedLetter open;
    std::optional<WeightedLetter> close; // set iff this is a matched pair
    std::vector<ForestNode> children;

    bool is_pair() const { return close.has_value(); }
};
using Forest = std::vector<ForestNode>;

/// Builds the nested-word forest of a balanced weighted word. Throws
/// std::invalid_argument on unbalanced input.
Forest parse_forest(const Vpa& vpa, const std::vector<WeightedLetter>& word);

/// Lifts a plain symbol word to unit-weight letters with stream positions.
std::vector<WeightedLetter> weighted_word_of(const Vpa& vpa,
                                             const std::vector<int>& word);

/// Balanced-edit distance: minimum total weight of inserted/deleted letters
/// transforming u into v, where push/pop letters move only as matched pairs.
/// Computed as forest edit distance with node costs = letter weights.
std::uint64_t bdist(const Vpa& vpa, const std::vector<WeightedLetter>& u,
                    const std::vector<WeightedLetter>& v);

/// Independent check of bdist: enumerates every pair-closed subsequence of
/// both words and maximizes the weight of a common one. Exponential in the
/// node counts; for small words only.
std::uint64_t bdist_bruteforce(const Vpa& vpa, const std::vector<WeightedLetter>& u,
                               const std::vector<WeightedLetter>& v);

/// Minimum bdist from u to any member of L(vpa), by uniform-cost search over
/// the balanced-edit neighborhood with membership checks. Returns nullopt
/// when every member is farther than `bound`.
std::optional<std::uint64_t> bdist_to_language(const Vpa& vpa,
                                               const std::vector<int>& word,
                                               std::uint64_t bound);

/// Insert/delete edit distance between sliced words; costs are the sliced
/// letter weights, matches require equal letters.
std::uint64_t sliced_dist(const std::vector<SlicedLetter>& a,
                          const std::vector<SlicedLetter>& b);

/// Brute-force acceptance by simulating the full set of (state, stack)
/// configurations. Ground truth for the relation-algebra semantics.
bool oracle_accepts(const Vpa& vpa, const std::vector<int>& word);

/// A RandomSource that replays a fixed prefix of Bernoulli decisions and
/// answers `true` past it, recording every non-degenerate choice and the
/// exact probability of the path taken. Driving a randomized procedure over
/// all such prefixes enumerates its full outcome distribution.
class BranchingSource final : public RandomSource {
public:
    explicit BranchingSource(std::vector<bool> prefix) : prefix_(std::move(prefix)) {}

    bool bernoulli(std::uint64_t num, std::uint64_t den) override {
        if (num == 0) return false;
        if (num >= den) return true;
        const std::size_t i = choices_.size();
        const bool v = i < prefix_.size() ? prefix_[i] : true;
        choices_.push_back(v);
        prob_ = prob_ * (v ? Frac::make(num, den) : Frac::make(den - num, den));
        return v;
    }

    std::uint64_t below(std::uint64_t n) override {
        for (std::uint64_t j = 0; j + 1 < n; ++j)
            if (bernoulli(1, n - j)) return j;
        return n == 0 ? 0 : n - 1;
    }

    const std::vector<bool>& choices() const { return choices_; }
    const Frac& probability() const { return prob_; }
    std::size_t prefix_size() const { return prefix_.size(); }

private:
    std::vector<bool> prefix_;
    std::vector<bool> choices_;
    Frac prob_{1};
};

/// Exact outcome distribution of a randomized procedure: runs it once per
/// decision path, keyed by the string the procedure returns. Probabilities
/// sum to exactly 1.
template <class Run>
std::map<std::string, Frac> enumerate_outcomes(Run&& run) {
    std::map<std::string, Frac> out;
    std::vector<std::vector<bool>> pending;
    pending.emplace_back();
    while (!pending.empty()) {
        std::vector<bool> prefix = std::move(pending.back());
        pending.pop_back();
        BranchingSource src(std::move(prefix));
        const std::string key = run(src);
        const auto& ch = src.choices();
        for (std::size_t i = src.prefix_size(); i < ch.size(); ++i) {
            std::vector<bool> alt(ch.begin(),
                                  ch.begin() + static_cast<std::ptrdiff_t>(i));
            alt.push_back(false);
            pending.push_back(std::move(alt));
        }
        auto [it, fresh] = out.try_emplace(key, src.probability());
        if (!fresh) it->second += src.probability();
    }
    return out;
}

} // namespace vplt

#endif // VPLT_ORACLE_HH_
