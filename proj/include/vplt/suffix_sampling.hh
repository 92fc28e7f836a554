/* suffix_sampling.hh -- suffix decompositions carrying per-suffix samplers */

#ifndef VPLT_SUFFIX_SAMPLING_HH_
#define VPLT_SUFFIX_SAMPLING_HH_

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vplt/rng.hh"
#include "vplt/sampling.hh"
#include "vplt/weighted.hh"

namespace vplt {

/// Exact integer test  a*num <= b*den  without overflow.
inline bool ratio_le(std::uint64_t a, std::uint64_t num, std::uint64_t b,
                     std::uint64_t den) {
    return static_cast<unsigned __int128>(a) * num <=
           static_cast<unsigned __int128>(b) * den;
}

/// One suffix u^l of the decomposition, with weight bounds, balance counters
/// and t independent samplers over the suffix. In the exact variant the two
/// weight bounds coincide.
template <class Sampler>
struct SuffixEntry {
    std::uint64_t weight_low = 0;
    std::uint64_t weight_high = 0;
    std::uint64_t unmatched_pushes = 0;
    std::uint64_t unmatched_pops = 0;
    bool diff_next_is_one = false; // this suffix = one letter + the next one
    std::vector<Sampler> samples;

    std::size_t stored_letters() const {
        std::size_t s = 0;
        for (const auto& c : samples) s += c.stored_letters();
        return s;
    }
};

/// An alpha-suffix decomposition of a streamed word, longest suffix first,
/// with t samplers per suffix. alpha is a rational alpha_num/alpha_den > 1;
/// all decomposition guards are exact integer comparisons.
template <class Sampler>
class SuffixSampling {
public:
    using Entry = SuffixEntry<Sampler>;

    SuffixSampling() = default;
    SuffixSampling(std::uint64_t alpha_num, std::uint64_t alpha_den, std::size_t t)
        : alpha_num_(alpha_num), alpha_den_(alpha_den), t_(t) {
        if (alpha_num <= alpha_den || alpha_den == 0)
            throw std::invalid_argument("suffix sampling needs alpha > 1");
    }

    std::vector<Entry> entries; // entries[0] covers the whole word

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
    std::uint64_t alpha_num() const { return alpha_num_; }
    std::uint64_t alpha_den() const { return alpha_den_; }
    std::size_t t() const { return t_; }

    /// Concatenation with a single letter: every suffix grows by the letter
    /// (sampler fed, or restarted with reservoir probability), and the letter
    /// becomes the new shortest suffix.
    template <class MakeSampler>
    void append_letter(const WeightedLetter& l, SymClass cls, RandomSource& rng,
                       MakeSampler make_sampler) {
        for (auto& e : entries) {
            for (auto& s : e.samples) {
                if (rng.bernoulli(l.weight, e.weight_high + l.weight))
                    s.start(l, cls);
                else
                    s.feed(l, cls);
            }
            e.weight_low += l.weight;
            e.weight_high += l.weight;
            bump_counters(e, cls);
        }
        if (!entries.empty()) entries.back().diff_next_is_one = true;
        Entry fresh;
        fresh.weight_low = fresh.weight_high = l.weight;
        bump_counters(fresh, cls);
        fresh.samples.reserve(t_);
        for (std::size_t i = 0; i < t_; ++i) {
            fresh.samples.push_back(make_sampler());
            fresh.samples.back().start(l, cls);
        }
        entries.push_back(std::move(fresh));
    }

    /// Concatenation with a whole sampled word of exactly known total weight.
    /// Existing suffixes grow by the word; their i-th sampler is replaced by
    /// a copy of the i-th top-level sampler of the other sampling with the
    /// reservoir probability. The other sampling's suffixes join at the top.
    void concatenate_word(SuffixSampling&& other, std::uint64_t word_weight,
                          std::uint64_t word_pushes, std::uint64_t word_pops,
                          RandomSource& rng) {
        if (other.empty()) return;
        const Entry& top = other.entries.front();
        if (top.samples.size() != t_)
            throw std::invalid_argument("concatenate: sampler count mismatch");
        for (auto& e : entries) {
            for (std::size_t i = 0; i < t_; ++i)
                if (rng.bernoulli(word_weight, e.weight_high + word_weight))
                    e.samples[i] = top.samples[i];
            e.weight_low += word_weight;
            e.weight_high += word_weight;
            const std::uint64_t absorbed =
                word_pops < e.unmatched_pushes ? word_pops : e.unmatched_pushes;
            e.unmatched_pushes = e.unmatched_pushes - absorbed + word_pushes;
            e.unmatched_pops += word_pops - absorbed;
        }
        // the old shortest suffix is the last letter of the old word, so the
        // boundary step is a single-letter step by construction
        if (!entries.empty()) entries.back().diff_next_is_one = true;
        for (auto& e : other.entries) entries.push_back(std::move(e));
        other.entries.clear();
    }

    /// Keeps the decomposition small: walking from the shortest suffix down,
    /// every block of longer suffixes within factor alpha collapses to its
    /// longest member.
    void simplify() {
        if (entries.size() < 2) return;
        std::vector<Entry> kept;
        kept.reserve(entries.size());
        std::size_t i = entries.size() - 1;
        kept.push_back(std::move(entries[i]));
        while (i > 0) {
            std::size_t m = i; // smallest index with weight_high <= alpha * weight_low(i)
            for (std::size_t j = i; j-- > 0;) {
                if (ratio_le(entries[j].weight_high, alpha_den_,
                             entries[i].weight_low, alpha_num_))
                    m = j;
                else
                    break;
            }
            if (m == i) m = i - 1; // nothing removable; keep the neighbour
            if (m != i - 1) entries[m].diff_next_is_one = false;
            kept.push_back(std::move(entries[m]));
            i = m;
        }
        entries.assign(std::make_move_iterator(kept.rbegin()),
                       std::make_move_iterator(kept.rend()));
    }

    /// Decomposition validity: every adjacent pair is within factor alpha or
    /// a recorded single-letter step. Uses the pessimistic sides of the
    /// weight bounds, so it holds with equality semantics in the exact
    /// variant.
    bool valid_decomposition() const {
        for (std::size_t l = 0; l + 1 < entries.size(); ++l) {
            if (entries[l].diff_next_is_one) continue;
            if (!ratio_le(entries[l].weight_high, alpha_den_,
                          entries[l + 1].weight_low, alpha_num_))
                return false;
        }
        return !entries.empty();
    }

    std::size_t stored_letters() const {
        std::size_t s = 0;
        for (const auto& e : entries) s += e.stored_letters();
        return s;
    }

private:
    static void bump_counters(Entry& e, SymClass cls) {
        if (cls == SymClass::Push) {
            ++e.unmatched_pushes;
        } else if (cls == SymClass::Pop) {
            if (e.unmatched_pushes > 0)
                --e.unmatched_pushes;
            else
                ++e.unmatched_pops;
        }
    }

    std::uint64_t alpha_num_ = 2;
    std::uint64_t alpha_den_ = 1;
    std::size_t t_ = 1;
};

/// Online construction: feed letters one by one, simplifying after each.
template <class Sampler, class MakeSampler>
SuffixSampling<Sampler> online_suffix_sampling(const std::vector<WeightedLetter>& word,
                                               const std::vector<SymClass>& classes,
                                               std::uint64_t alpha_num,
                                               std::uint64_t alpha_den, std::size_t t,
                                               RandomSource& rng,
                                               MakeSampler make_sampler) {
    SuffixSampling<Sampler> d(alpha_num, alpha_den, t);
    for (std::size_t i = 0; i < word.size(); ++i) {
        d.append_letter(word[i], classes[i], rng, make_sampler);
        d.simplify();
    }
    return d;
}

} // namespace vplt

#endif // VPLT_SUFFIX_SAMPLING_HH_
