/* weighted.hh -- weighted letters and words, balance checking, k-factors */

#ifndef VPLT_WEIGHTED_HH_
#define VPLT_WEIGHTED_HH_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "vplt/bitmatrix.hh"
#include "vplt/vpa.hh"

namespace vplt {

/// One letter of a weighted word: either a base symbol of the machine
/// alphabet (weight 1) or a relation letter standing in for a compressed
/// balanced factor (weight = total base weight of that factor).
///
/// Height convention: a push letter carries the height before it, pops and
/// neutrals the height at/after them. `position` is the index of the first
/// base letter the letter covers in the original stream, so consecutive word
/// letters satisfy next.position == position + weight. `right_side` marks
/// letters at or after the first pop of the peak they belong to.
struct WeightedLetter {
    int symbol = -1; // base symbol id; -1 for relation letters
    std::shared_ptr<const Relation> rel;
    std::uint64_t weight = 1;
    std::uint64_t height = 0;
    std::uint64_t position = 0;
    bool right_side = false;
    bool estimated = false; // weight and position are lower-bound estimates
    std::uint32_t depth = 0;

    bool is_relation() const { return rel != nullptr; }

    SymClass cls(const Vpa& vpa) const {
        return is_relation() ? SymClass::Neutral : vpa.symbol_class[symbol];
    }

    bool same_content(const WeightedLetter& o) const {
        if (weight != o.weight || height != o.height || position != o.position) return false;
        if (is_relation() != o.is_relation()) return false;
        if (is_relation()) return *rel == *o.rel;
        return symbol == o.symbol;
    }
};

struct WeightedWord {
    std::vector<WeightedLetter> letters;
    std::uint64_t total_weight = 0;

    void append(WeightedLetter l) {
        total_weight += l.weight;
        letters.push_back(std::move(l));
    }
    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    const WeightedLetter& operator[](std::size_t i) const { return letters[i]; }
};

/// Online balance check: one signed counter. Feed classes as they stream by;
/// ok() is true iff no prefix dipped below zero and balanced() additionally
/// requires final height zero.
class BalanceChecker {
public:
    void feed(SymClass cls) {
        if (cls == SymClass::Push) ++height_;
        else if (cls == SymClass::Pop) --height_;
        if (height_ < 0) negative_ = true;
    }
    bool ok() const { return !negative_; }
    bool balanced() const { return !negative_ && height_ == 0; }
    long long height() const { return height_; }

private:
    long long height_ = 0;
    bool negative_ = false;
};

inline bool check_balanced(const Vpa& vpa, const std::vector<int>& word) {
    BalanceChecker bc;
    for (int s : word) {
        bc.feed(s < 0 ? SymClass::Neutral : vpa.symbol_class[s]);
        if (!bc.ok()) return false;
    }
    return bc.balanced();
}

/// The factor u[i, i+l] with minimal l such that its weight reaches k,
/// truncated at the end of the word. i is a 0-based letter index here.
inline WeightedWord k_factor_at(const WeightedWord& u, std::size_t i, std::uint64_t k) {
    if (i >= u.size()) throw std::out_of_range("k_factor_at: start out of range");
    WeightedWord out;
    for (std::size_t j = i; j < u.size(); ++j) {
        out.append(u[j]);
        if (out.total_weight >= k) break;
    }
    return out;
}

/// One draw of the peak sampler: the k-factor at a weight-proportional
/// random start, plus the matched pop window when the start is a push.
struct SampleFragment {
    WeightedWord factor;   // starts at the sampled letter
    WeightedWord pop_side; // window into the matching pop region; may be empty
    bool empty() const { return factor.empty() && pop_side.empty(); }
};

} // namespace vplt

#endif // VPLT_WEIGHTED_HH_
