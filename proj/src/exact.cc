/* exact.cc -- exact streaming recognizer with peak compression */

#include "vplt/exact.hh"

#include <algorithm>
#include <cassert>
#include <memory>

namespace vplt {

Relation relation_of_weighted(const Vpa& vpa, const std::vector<WeightedLetter>& letters,
                              std::size_t begin, std::size_t end) {
    struct Outer {
        Relation rel;
        int push_sym;
    };
    std::vector<Outer> outer;
    Relation cur = Relation::identity(vpa.m);
    for (std::size_t i = begin; i < end; ++i) {
        const WeightedLetter& l = letters[i];
        if (l.is_relation()) {
            cur = compose(cur, *l.rel);
            continue;
        }
        switch (vpa.symbol_class[l.symbol]) {
        case SymClass::Neutral:
            cur = compose(cur, vpa.neutral_rel[l.symbol]);
            break;
        case SymClass::Push:
            outer.push_back({std::move(cur), l.symbol});
            cur = Relation::identity(vpa.m);
            break;
        case SymClass::Pop: {
            if (outer.empty()) throw std::invalid_argument("unbalanced factor: unmatched pop");
            Outer o = std::move(outer.back());
            outer.pop_back();
            cur = compose(o.rel, vpa.surround(o.push_sym, cur, l.symbol));
            break;
        }
        }
    }
    if (!outer.empty()) throw std::invalid_argument("unbalanced factor: unmatched push");
    return cur;
}

ExactRecognizer::ExactRecognizer(const Vpa& vpa)
    : vpa_(vpa), r_temp_(Relation::identity(vpa.m)) {}

bool ExactRecognizer::feed(int symbol) {
    if (dead_) return false;
    ++stats_.n;
    const SymClass cls = vpa_.symbol_class[symbol];

    WeightedLetter l;
    l.symbol = symbol;
    l.position = pos_++;

    const std::uint64_t height = u0_open_.size() + open_below_();
    switch (cls) {
    case SymClass::Push:
        l.height = height;
        break;
    case SymClass::Pop:
        if (height == 0) {
            dead_ = true;
            return false;
        }
        l.height = height - 1;
        break;
    case SymClass::Neutral:
        l.height = height;
        break;
    }
    l.right_side = u0_has_pop_ || cls == SymClass::Pop;

    if (cls == SymClass::Push && u0_has_pop_) {
        Frozen f;
        f.letters = std::move(u0_);
        f.open_pushes = std::move(u0_open_);
        f.weight = u0_weight_;
        f.suffix_begin = f.open_pushes.back() + 1;
        f.suffix_weight = 0;
        for (std::size_t i = f.suffix_begin; i < f.letters.size(); ++i)
            f.suffix_weight += f.letters[i].weight;
        open_below_cache_ += f.open_pushes.size();
        stack_.push_back(std::move(f));
        stats_.max_stack = std::max(stats_.max_stack, stack_.size());
        u0_ = {};
        u0_open_ = {};
        u0_weight_ = 0;
        u0_has_pop_ = false;
        l.right_side = false;
    }

    append(std::move(l));
    if (dead_) return false;
    if (u0_open_.empty() && !u0_.empty()) merge_balanced();
    absorb();
    note_storage();
    return true;
}

void ExactRecognizer::append(WeightedLetter l) {
    const SymClass cls = l.cls(vpa_);
    if (cls == SymClass::Pop) {
        if (u0_open_.empty()) {
            dead_ = true;
            return;
        }
        u0_open_.pop_back();
        u0_has_pop_ = true;
    }
    u0_weight_ += l.weight;
    u0_.push_back(std::move(l));
    if (cls == SymClass::Push) u0_open_.push_back(u0_.size() - 1);
}

void ExactRecognizer::merge_balanced() {
    Relation r = relation_of_weighted(vpa_, u0_, 0, u0_.size());
    std::uint32_t depth = 0;
    for (const auto& l : u0_) {
        depth = std::max(depth, l.depth);
        if (l.is_relation() && 3 * l.weight > 2 * u0_weight_)
            stats_.compress_bound_ok = false;
    }
    ++depth;
    stats_.max_depth = std::max(stats_.max_depth, depth);

    if (stack_.empty()) {
        r_temp_ = compose(r_temp_, r);
        u0_.clear();
        u0_weight_ = 0;
        u0_has_pop_ = false;
        return;
    }

    WeightedLetter rl;
    rl.rel = std::make_shared<const Relation>(std::move(r));
    rl.weight = u0_weight_;
    rl.position = u0_.front().position;
    rl.depth = depth;

    Frozen v = std::move(stack_.back());
    stack_.pop_back();
    open_below_cache_ -= v.open_pushes.size();
    rl.height = v.open_pushes.size() + open_below_();
    rl.right_side = true;

    u0_ = std::move(v.letters);
    u0_open_ = std::move(v.open_pushes);
    u0_weight_ = v.weight + rl.weight;
    u0_has_pop_ = true;
    u0_.push_back(std::move(rl));
}

void ExactRecognizer::absorb() {
    while (!stack_.empty()) {
        Frozen& top = stack_.back();
        if (2 * u0_weight_ < top.suffix_weight) break;

        Relation r = relation_of_weighted(vpa_, top.letters, top.suffix_begin,
                                          top.letters.size());
        std::uint32_t depth = 0;
        for (std::size_t i = top.suffix_begin; i < top.letters.size(); ++i) {
            const WeightedLetter& l = top.letters[i];
            depth = std::max(depth, l.depth);
            if (l.is_relation() && 3 * l.weight > 2 * top.suffix_weight)
                stats_.compress_bound_ok = false;
        }
        ++depth;
        stats_.max_depth = std::max(stats_.max_depth, depth);

        WeightedLetter rl;
        rl.rel = std::make_shared<const Relation>(std::move(r));
        rl.weight = top.suffix_weight;
        rl.position = top.letters[top.suffix_begin].position;
        rl.depth = depth;

        Frozen v = std::move(stack_.back());
        stack_.pop_back();
        open_below_cache_ -= v.open_pushes.size();
        rl.height = v.open_pushes.size() + open_below_();
        rl.right_side = false; // sits among the pushes of the merged peak

        const std::uint64_t merged_weight = v.weight + u0_weight_;
        std::vector<WeightedLetter> merged(
            std::make_move_iterator(v.letters.begin()),
            std::make_move_iterator(v.letters.begin() +
                                    static_cast<std::ptrdiff_t>(v.suffix_begin)));
        merged.push_back(std::move(rl));
        const std::size_t shift = merged.size();
        for (auto& l : u0_) merged.push_back(std::move(l));

        std::vector<std::size_t> opens = std::move(v.open_pushes);
        for (std::size_t idx : u0_open_) opens.push_back(idx + shift);

        u0_ = std::move(merged);
        u0_open_ = std::move(opens);
        u0_weight_ = merged_weight;
        // pops of v live in its balanced suffix, so the merged prefix is
        // pop-free; whether the unfinished peak has seen a pop is inherited
        // from the absorbed u0 alone.
    }
}

void ExactRecognizer::note_storage() {
    std::size_t held = u0_.size();
    for (const auto& f : stack_) held += f.letters.size();
    stats_.max_letters = std::max(stats_.max_letters, held);
}

ExactResult ExactRecognizer::finish() const {
    ExactResult res;
    res.stats = stats_;
    if (dead_ || !u0_.empty() || !stack_.empty()) {
        res.accepted = false;
        res.reason = "unbalanced";
        res.stats.balanced = false;
        return res;
    }
    res.stats.balanced = true;
    res.accepted = vpa_.relation_accepts(r_temp_);
    if (!res.accepted) res.reason = "rejected";
    return res;
}

ExactResult run_exact(const Vpa& vpa, const std::vector<int>& word) {
    ExactRecognizer rec(vpa);
    for (int s : word) rec.feed(s);
    return rec.finish();
}

} // namespace vplt
