/* slicing.cc -- construction and reachability of the slicing automaton */

#include "vplt/slicing.hh"

#include <deque>
#include <stdexcept>

namespace vplt {

BitMatrix SlicingNfa::left_relation_step(const Relation& r) const {
    BitMatrix out(nstates);
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t p2 = 0; p2 < m; ++p2) {
            if (!r.get(p, p2)) continue;
            for (std::size_t q = 0; q < m; ++q)
                out.set(pair_index(p, q), pair_index(p2, q));
        }
    return out;
}

BitMatrix SlicingNfa::right_relation_step(const Relation& r) const {
    BitMatrix out(nstates);
    for (std::size_t q2 = 0; q2 < m; ++q2)
        for (std::size_t q = 0; q < m; ++q) {
            if (!r.get(q2, q)) continue;
            for (std::size_t p = 0; p < m; ++p)
                out.set(pair_index(p, q), pair_index(p, q2));
        }
    return out;
}

BitMatrix SlicingNfa::letter_step(const SlicedLetter& l) const {
    switch (l.kind) {
    case SlicedLetter::Kind::Pair:
        return pair_step[l.a_sym][l.b_sym];
    case SlicedLetter::Kind::Left:
        return l.rel ? left_relation_step(*l.rel) : left_step[l.sym];
    case SlicedLetter::Kind::Right:
        return l.rel ? right_relation_step(*l.rel) : right_step[l.sym];
    }
    throw std::logic_error("unreachable");
}

SlicingNfa build_slicing(const Vpa& vpa) {
    SlicingNfa nfa;
    nfa.m = vpa.m;
    nfa.nstates = vpa.m * vpa.m;
    const std::size_t m = vpa.m;
    const std::size_t ns = vpa.num_symbols();

    nfa.pair_step.assign(ns, std::vector<BitMatrix>(ns));
    nfa.left_step.assign(ns, BitMatrix());
    nfa.right_step.assign(ns, BitMatrix());
    nfa.pair_step_any_pop.assign(ns, BitMatrix());
    nfa.pair_step_any_push.assign(ns, BitMatrix());

    for (std::size_t a = 0; a < ns; ++a) {
        if (!vpa.is_push(static_cast<int>(a))) continue;
        nfa.pair_step_any_pop[a] = BitMatrix(nfa.nstates);
        for (std::size_t b = 0; b < ns; ++b) {
            if (!vpa.is_pop(static_cast<int>(b))) continue;
            BitMatrix step(nfa.nstates);
            for (std::size_t g = 0; g < vpa.num_stack(); ++g) {
                const Relation& pu = vpa.push_rel[a][g];
                const Relation& po = vpa.pop_rel[b][g];
                for (std::size_t p = 0; p < m; ++p)
                    for (std::size_t p2 = 0; p2 < m; ++p2) {
                        if (!pu.get(p, p2)) continue;
                        for (std::size_t q2 = 0; q2 < m; ++q2)
                            for (std::size_t q = 0; q < m; ++q)
                                if (po.get(q2, q))
                                    step.set(nfa.pair_index(p, q), nfa.pair_index(p2, q2));
                    }
            }
            nfa.pair_step_any_pop[a] |= step;
            nfa.pair_step[a][b] = std::move(step);
        }
    }
    for (std::size_t b = 0; b < ns; ++b) {
        if (!vpa.is_pop(static_cast<int>(b))) continue;
        nfa.pair_step_any_push[b] = BitMatrix(nfa.nstates);
        for (std::size_t a = 0; a < ns; ++a)
            if (vpa.is_push(static_cast<int>(a))) nfa.pair_step_any_push[b] |= nfa.pair_step[a][b];
    }
    for (std::size_t c = 0; c < ns; ++c) {
        if (!vpa.is_neutral(static_cast<int>(c))) continue;
        nfa.left_step[c] = nfa.left_relation_step(vpa.neutral_rel[c]);
        nfa.right_step[c] = nfa.right_relation_step(vpa.neutral_rel[c]);
    }

    nfa.initial.assign(nfa.nstates, 0);
    nfa.finals.assign(nfa.nstates, 0);
    for (int p : vpa.initial)
        for (int q : vpa.finals) nfa.initial[nfa.pair_index(p, q)] = 1;
    for (std::size_t p = 0; p < m; ++p) nfa.finals[nfa.pair_index(p, p)] = 1;

    ReachResult rr = reach_and_diameter(nfa);
    nfa.base_reach = rr.reach;
    nfa.diameter = rr.diameter;

    // The gap closure additionally admits one-sided relation-letter steps for
    // any relation realizable by a balanced word; the balanced reachability
    // relation covers all of them at once.
    Relation b = vpa.balanced_reach();
    nfa.gap_closure = nfa.base_reach;
    nfa.gap_closure |= nfa.left_relation_step(b);
    nfa.gap_closure |= nfa.right_relation_step(b);
    nfa.gap_closure.close();

    return nfa;
}

ReachResult reach_and_diameter(const SlicingNfa& nfa) {
    // Single adjacency matrix over pair states: any base sliced letter.
    BitMatrix adj(nfa.nstates);
    for (std::size_t a = 0; a < nfa.pair_step.size(); ++a)
        for (std::size_t b = 0; b < nfa.pair_step[a].size(); ++b)
            if (nfa.pair_step[a][b].size()) adj |= nfa.pair_step[a][b];
    for (const auto& mtx : nfa.left_step)
        if (mtx.size()) adj |= mtx;
    for (const auto& mtx : nfa.right_step)
        if (mtx.size()) adj |= mtx;

    std::size_t diameter = 0;
    BitMatrix reach(nfa.nstates);
    std::vector<int> dist(nfa.nstates);
    for (std::size_t s = 0; s < nfa.nstates; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<std::size_t> queue;
        dist[s] = 0;
        queue.push_back(s);
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            reach.set(s, v);
            diameter = std::max(diameter, static_cast<std::size_t>(dist[v]));
            for (std::size_t w = 0; w < nfa.nstates; ++w)
                if (adj.get(v, w) && dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
        }
    }
    return {std::move(reach), diameter};
}

std::vector<SlicedLetter> slice_peak_weighted(const Vpa& vpa, const WeightedWord& word) {
    struct Level {
        std::vector<SlicedLetter> left, right;
        int push_sym = -1, pop_sym = -1;
        std::uint64_t pair_weight = 0;
    };
    std::vector<Level> levels(1);
    std::size_t h = 0;
    std::size_t top = 0;
    bool seen_pop = false;
    for (const auto& l : word.letters) {
        SymClass cls = l.cls(vpa);
        switch (cls) {
        case SymClass::Push:
            if (seen_pop) throw std::invalid_argument("not a peak: push after pop");
            if (levels.size() <= h + 1) levels.resize(h + 2);
            levels[h].push_sym = l.symbol;
            levels[h].pair_weight += l.weight;
            ++h;
            top = std::max(top, h);
            break;
        case SymClass::Pop:
            if (h == 0) throw std::invalid_argument("not balanced: negative height");
            seen_pop = true;
            --h;
            levels[h].pop_sym = l.symbol;
            levels[h].pair_weight += l.weight;
            break;
        case SymClass::Neutral: {
            SlicedLetter sl;
            sl.kind = seen_pop ? SlicedLetter::Kind::Right : SlicedLetter::Kind::Left;
            sl.sym = l.symbol;
            sl.rel = l.rel;
            sl.weight = l.weight;
            if (levels.size() <= h) levels.resize(h + 1);
            (seen_pop ? levels[h].right : levels[h].left).push_back(std::move(sl));
            break;
        }
        }
    }
    if (h != 0) throw std::invalid_argument("not balanced: nonzero final height");

    std::vector<SlicedLetter> out;
    for (std::size_t lev = 0; lev <= top; ++lev) {
        const Level& L = levels[lev];
        for (const auto& sl : L.left) out.push_back(sl);
        // the backward component consumes the right side from the end toward
        // the middle, so a level's right neutrals appear in reverse word order
        for (auto it = L.right.rbegin(); it != L.right.rend(); ++it) out.push_back(*it);
        if (L.push_sym >= 0) {
            SlicedLetter pair;
            pair.kind = SlicedLetter::Kind::Pair;
            pair.a_sym = L.push_sym;
            pair.b_sym = L.pop_sym;
            pair.weight = L.pair_weight;
            out.push_back(std::move(pair));
        }
    }
    return out;
}

std::vector<SlicedLetter> slice_peak(const Vpa& vpa, const std::vector<int>& word) {
    WeightedWord w;
    std::uint64_t pos = 0;
    for (int s : word) {
        WeightedLetter l;
        l.symbol = s;
        l.position = pos++;
        w.append(std::move(l));
    }
    return slice_peak_weighted(vpa, w);
}

bool slicing_accepts(const SlicingNfa& nfa, const std::vector<SlicedLetter>& sliced) {
    std::vector<char> cur = nfa.initial;
    for (const auto& l : sliced) {
        BitMatrix step = nfa.letter_step(l);
        std::vector<char> next(nfa.nstates, 0);
        for (std::size_t v = 0; v < nfa.nstates; ++v) {
            if (!cur[v]) continue;
            for (std::size_t w = 0; w < nfa.nstates; ++w)
                if (step.get(v, w)) next[w] = 1;
        }
        cur = std::move(next);
    }
    for (std::size_t v = 0; v < nfa.nstates; ++v)
        if (cur[v] && nfa.finals[v]) return true;
    return false;
}

} // namespace vplt
