/* sampling.hh -- reservoir sampling and the streaming window sampler */

#ifndef VPLT_SAMPLING_HH_
#define VPLT_SAMPLING_HH_

#include <cstdint>
#include <deque>
#include <optional>

#include "vplt/rng.hh"
#include "vplt/weighted.hh"

namespace vplt {

/// One slot of weight-proportional reservoir sampling: after feeding letters
/// of total weight sigma, holds each fed letter with probability
/// weight/sigma.
class ReservoirCell {
public:
    void feed(const WeightedLetter& l, RandomSource& rng) {
        sigma_ += l.weight;
        if (rng.bernoulli(l.weight, sigma_)) letter_ = l;
    }
    bool filled() const { return letter_.has_value(); }
    const WeightedLetter& letter() const { return *letter_; }
    std::uint64_t sigma() const { return sigma_; }

private:
    std::uint64_t sigma_ = 0;
    std::optional<WeightedLetter> letter_;
};

/// Plain sampler: remembers the current candidate letter and nothing else.
/// Satisfies the same interface as WkCell so suffix samplings can carry
/// either.
class LetterSampler {
public:
    void start(const WeightedLetter& l, SymClass) { letter_ = l; }
    void feed(const WeightedLetter&, SymClass) {}
    void compress_tail(std::uint64_t, const WeightedLetter&, SymClass) {}
    bool started() const { return letter_.has_value(); }
    const WeightedLetter& letter() const { return *letter_; }
    std::size_t stored_letters() const { return letter_ ? 1 : 0; }

private:
    std::optional<WeightedLetter> letter_;
};

/// Streaming collector for one window sample anchored at a candidate letter:
/// the factor from the candidate until its weight reaches k, and -- when the
/// candidate is a push -- a window of the last 2k+1 letters ending at the pop
/// matching the candidate, followed by up to k trailing neutral letters.
///
/// The fed stream may skip a span (letters a frozen peak never saw). A skip
/// closes an open factor early; the pop window keeps buffering, since its
/// letters carry positions and consumers only trust adjacency they can
/// verify. Early losses weaken later rejections but never soundness.
class WkCell {
public:
    WkCell() = default;
    explicit WkCell(std::uint64_t k) : k_(k) {}

    /// Restarts the collector at a new candidate letter.
    void start(const WeightedLetter& l, SymClass cls) {
        factor_ = WeightedWord{};
        pop_side_ = WeightedWord{};
        ring_.clear();
        neutrals_taken_ = 0;
        await_pop_height_.reset();
        phase_ = Phase::Factor;
        // any start in the push block gets the window up to the pop closing
        // its level: pushes await their own match, left neutrals at height h
        // the pop closing the enclosing pair (height h-1)
        if (cls == SymClass::Push) await_pop_height_ = l.height;
        else if (cls == SymClass::Neutral && !l.right_side && l.height > 0)
            await_pop_height_ = l.height - 1;
        expected_pos_ = l.position + l.weight;
        factor_.append(l);
        if (factor_.total_weight >= k_) close_factor();
    }

    /// Feeds the next stream letter.
    void feed(const WeightedLetter& l, SymClass cls) {
        if (phase_ == Phase::Idle || phase_ == Phase::Done) return;
        const bool gap = l.position != expected_pos_;
        expected_pos_ = l.position + l.weight;
        if (gap && phase_ == Phase::Factor) close_factor();
        switch (phase_) {
        case Phase::Factor:
            factor_.append(l);
            if (cls == SymClass::Pop && await_pop_height_ && l.height == *await_pop_height_)
                await_pop_height_.reset(); // matching pop landed inside the factor
            if (factor_.total_weight >= k_) close_factor();
            break;
        case Phase::WaitPop:
            ring_.push_back(l);
            if (ring_.size() > 2 * k_ + 1) ring_.pop_front();
            if (cls == SymClass::Pop && l.height == *await_pop_height_) {
                for (const auto& rl : ring_) pop_side_.append(rl);
                ring_.clear();
                await_pop_height_.reset();
                phase_ = Phase::Neutrals;
            }
            break;
        case Phase::Neutrals:
            if (!gap && cls == SymClass::Neutral && neutrals_taken_ < k_) {
                pop_side_.append(l);
                ++neutrals_taken_;
            } else {
                phase_ = Phase::Done;
            }
            break;
        default:
            break;
        }
    }

    /// Substitutes every collected letter at height >= h_base -- the part of
    /// the sample living in a balanced suffix that got compressed -- by the
    /// single relation letter standing for that suffix. When the candidate
    /// itself lives there, the whole sample restarts as that letter.
    void compress_tail(std::uint64_t h_base, const WeightedLetter& repl,
                       SymClass repl_cls = SymClass::Neutral) {
        if (phase_ == Phase::Idle) return;
        if (!factor_.empty() && factor_.letters.front().height >= h_base) {
            start(repl, repl_cls);
            return;
        }
        bool dropped = false;
        while (!ring_.empty() && ring_.back().height >= h_base) {
            ring_.pop_back();
            dropped = true;
        }
        if (ring_.empty()) {
            while (!pop_side_.empty() && pop_side_.letters.back().height >= h_base) {
                pop_side_.total_weight -= pop_side_.letters.back().weight;
                pop_side_.letters.pop_back();
                dropped = true;
            }
        }
        if (pop_side_.empty() && ring_.empty()) {
            while (!factor_.empty() && factor_.letters.back().height >= h_base) {
                factor_.total_weight -= factor_.letters.back().weight;
                factor_.letters.pop_back();
                dropped = true;
            }
        }
        if (!dropped) return;
        const Phase keep = phase_;
        if (keep == Phase::Done) {
            // reopen just enough to register the replacement letter, then
            // close again
            phase_ = pop_side_.empty() && ring_.empty() ? Phase::Factor : Phase::Neutrals;
        }
        expected_pos_ = repl.position;
        feed(repl, repl_cls);
        if (keep == Phase::Done) phase_ = Phase::Done;
    }

    bool active() const { return phase_ != Phase::Idle && phase_ != Phase::Done; }
    bool started() const { return phase_ != Phase::Idle; }

    SampleFragment fragment() const {
        SampleFragment f;
        f.factor = factor_;
        f.pop_side = pop_side_;
        // An unresolved window contributes whatever the ring holds; letters
        // carry positions, so consumers treat partial views uniformly.
        for (const auto& l : ring_) f.pop_side.append(l);
        return f;
    }

    std::size_t stored_letters() const {
        return factor_.size() + pop_side_.size() + ring_.size();
    }

private:
    enum class Phase { Idle, Factor, WaitPop, Neutrals, Done };

    void close_factor() {
        if (await_pop_height_) phase_ = Phase::WaitPop;
        else phase_ = Phase::Neutrals;
    }

    std::uint64_t k_ = 1;
    Phase phase_ = Phase::Idle;
    WeightedWord factor_;
    WeightedWord pop_side_;
    std::deque<WeightedLetter> ring_;
    std::optional<std::uint64_t> await_pop_height_;
    std::uint64_t neutrals_taken_ = 0;
    std::uint64_t expected_pos_ = 0;
};

} // namespace vplt

#endif // VPLT_SAMPLING_HH_
