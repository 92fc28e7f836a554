/* tester.cc -- relation approximation via consistency on the sliced word */

#include "vplt/tester.hh"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <tuple>

namespace vplt {

namespace {

std::uint64_t ceil_to_u64(long double x) {
    if (x < 1.0L) return 1;
    const long double c = std::ceil(x);
    if (c >= 1.0e18L) return static_cast<std::uint64_t>(1.0e18L);
    return static_cast<std::uint64_t>(c);
}

} // namespace

ApproxParams ApproxParams::derive(std::uint64_t m, std::uint64_t d, double epsilon,
                                  double eta, bool peak_profile) {
    ApproxParams p;
    p.m = m;
    p.d = d;
    p.epsilon = epsilon;
    p.eta = eta;
    const long double md = static_cast<long double>(m) * d;
    p.k = ceil_to_u64(4.0L * md / epsilon);
    const long double log_eta = std::max<long double>(1.0L, std::log2(1.0L / eta));
    const long double m3 = static_cast<long double>(m) * m * m;
    const std::uint64_t base_t = ceil_to_u64(4.0L * d * m3 * log_eta / epsilon);
    p.t = (peak_profile ? 4 : 2) * base_t;
    p.T = 4 * p.k * p.t;
    return p;
}

BitMatrix fragment_relation(const SlicingNfa& nfa,
                            const std::vector<SlicedLetter>& factor) {
    BitMatrix r = BitMatrix::identity(nfa.nstates);
    for (const auto& l : factor) r = r.compose(nfa.letter_step(l));
    return r;
}

namespace {

// A letter observation placed on the sliced word. Neutral letters occupy
// one-sided slots keyed by (height, side, position); each level's push/pop
// pair is keyed by height alone, since a peak has one push and one pop per
// level.
struct NeutralKey {
    std::uint64_t height;
    int side; // 0 = left of the first pop, 1 = right
    std::uint64_t position;
    bool operator<(const NeutralKey& o) const {
        return std::tie(height, side, position) < std::tie(o.height, o.side, o.position);
    }
};

struct PairObs {
    bool has_a = false, has_b = false;
    int a_sym = -1, b_sym = -1;
    std::uint64_t a_pos = 0, b_pos = 0;
};

struct PosObs {
    std::uint64_t height;
    SymClass cls;
    int sym; // -1 for relation letters
    std::uint64_t weight;
};

bool neutral_same(const WeightedLetter& a, const WeightedLetter& b) {
    if (a.weight != b.weight || a.right_side != b.right_side) return false;
    if (a.is_relation() != b.is_relation()) return false;
    if (a.is_relation()) return *a.rel == *b.rel;
    return a.symbol == b.symbol;
}

struct View {
    std::map<NeutralKey, WeightedLetter> neutrals;
    std::set<NeutralKey> tombstones; // estimated letters that collided
    std::map<std::uint64_t, PairObs> pairs;
    std::map<std::uint64_t, PosObs> positions;

    void note_position(const WeightedLetter& l, SymClass cls) {
        if (l.estimated) return;
        PosObs o{l.height, cls, l.symbol, l.weight};
        auto [it, fresh] = positions.emplace(l.position, o);
        if (fresh) return;
        if (it->second.height != o.height || it->second.cls != o.cls ||
            it->second.sym != o.sym || it->second.weight != o.weight)
            throw FragmentConflict("fragments disagree at stream position " +
                                   std::to_string(l.position));
    }

    void ingest(const WeightedLetter& l, const Vpa& vpa) {
        const SymClass cls = l.cls(vpa);
        note_position(l, cls);
        if (cls == SymClass::Push) {
            PairObs& p = pairs[l.height];
            if (p.has_a && (p.a_sym != l.symbol || p.a_pos != l.position))
                throw FragmentConflict("conflicting push at level " +
                                       std::to_string(l.height));
            p.has_a = true;
            p.a_sym = l.symbol;
            p.a_pos = l.position;
            return;
        }
        if (cls == SymClass::Pop) {
            PairObs& p = pairs[l.height];
            if (p.has_b && (p.b_sym != l.symbol || p.b_pos != l.position))
                throw FragmentConflict("conflicting pop at level " +
                                       std::to_string(l.height));
            p.has_b = true;
            p.b_sym = l.symbol;
            p.b_pos = l.position;
            return;
        }
        NeutralKey key{l.height, l.right_side ? 1 : 0, l.position};
        if (tombstones.count(key)) return;
        auto [it, fresh] = neutrals.emplace(key, l);
        if (fresh || neutral_same(it->second, l)) return;
        if (it->second.estimated || l.estimated) {
            // two distinct estimated spans landed on the same slot; trusting
            // either could exclude the other's true run, so trust neither
            neutrals.erase(it);
            tombstones.insert(key);
            return;
        }
        throw FragmentConflict("fragments disagree at stream position " +
                               std::to_string(l.position));
    }

    bool class_at(std::uint64_t pos, SymClass cls, std::uint64_t height) const {
        auto it = positions.find(pos);
        return it != positions.end() && it->second.cls == cls &&
               it->second.height == height;
    }
};

struct Node {
    std::uint64_t height;
    int cls; // 0 = left neutral, 1 = right neutral, 2 = pair
    std::uint64_t position;
    const WeightedLetter* letter = nullptr; // neutrals
    const PairObs* pair = nullptr;          // pairs
};

bool certified_adjacent(const View& view, const Node& x, const Node& y) {
    const std::uint64_t h = x.height;
    auto est = [](const Node& n) { return n.letter && n.letter->estimated; };
    if (est(x) || est(y)) return false;

    if (x.cls == 0 && y.cls == 0 && y.height == h)
        return y.position == x.position + x.letter->weight;
    // right neutrals run in reverse word order (the backward component reads
    // the word from the end), so "next" on the right side means lower position
    if (x.cls == 0 && y.cls == 1 && y.height == h)
        return h > 0 &&
               view.class_at(x.position + x.letter->weight, SymClass::Push, h) &&
               view.class_at(y.position + y.letter->weight, SymClass::Pop, h - 1);
    if (x.cls == 0 && y.cls == 2 && y.height == h) {
        const PairObs& p = *y.pair;
        return h > 0 &&
               view.class_at(x.position + x.letter->weight, SymClass::Push, h) &&
               p.has_b && view.class_at(p.b_pos + 1, SymClass::Pop, h - 1);
    }
    if (x.cls == 1 && y.cls == 1 && y.height == h)
        return x.position == y.position + y.letter->weight;
    if (x.cls == 1 && y.cls == 2 && y.height == h)
        return x.position >= 1 && view.class_at(x.position - 1, SymClass::Pop, h);
    if (x.cls == 2 && y.height == h + 1) {
        const PairObs& p = *x.pair;
        if (!p.has_a) return false;
        if (y.cls == 0) return y.position == p.a_pos + 1;
        if (y.cls == 1)
            return view.class_at(p.a_pos + 1, SymClass::Push, h + 1) &&
                   view.class_at(y.position + y.letter->weight, SymClass::Pop, h);
        const PairObs& q = *y.pair;
        return view.class_at(p.a_pos + 1, SymClass::Push, h + 1) && q.has_b &&
               view.class_at(q.b_pos + 1, SymClass::Pop, h);
    }
    return false;
}

BitMatrix node_step(const SlicingNfa& nfa, const Node& n) {
    if (n.cls == 2) {
        const PairObs& p = *n.pair;
        if (p.has_a && p.has_b) return nfa.pair_step[p.a_sym][p.b_sym];
        if (p.has_a) return nfa.pair_step_any_pop[p.a_sym];
        return nfa.pair_step_any_push[p.b_sym];
    }
    const WeightedLetter& l = *n.letter;
    if (n.cls == 0)
        return l.is_relation() ? nfa.left_relation_step(*l.rel) : nfa.left_step[l.symbol];
    return l.is_relation() ? nfa.right_relation_step(*l.rel) : nfa.right_step[l.symbol];
}

} // namespace

Relation approximate_relation(const Vpa& vpa, const SlicingNfa& nfa,
                              const std::vector<SampleFragment>& fragments) {
    View view;
    for (const auto& f : fragments) {
        for (const auto& l : f.factor.letters) view.ingest(l, vpa);
        for (const auto& l : f.pop_side.letters) view.ingest(l, vpa);
    }

    std::vector<Node> nodes;
    for (const auto& [key, letter] : view.neutrals)
        nodes.push_back({key.height, key.side, key.position, &letter, nullptr});
    for (const auto& [height, pair] : view.pairs)
        nodes.push_back({height, 2, 0, nullptr, &pair});
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) {
        if (std::tie(a.height, a.cls) != std::tie(b.height, b.cls))
            return std::tie(a.height, a.cls) < std::tie(b.height, b.cls);
        // within a level, right neutrals are consumed in reverse word order
        return a.cls == 1 ? a.position > b.position : a.position < b.position;
    });

    const BitMatrix& gap = nfa.gap_closure;
    BitMatrix m = gap;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i > 0 && !certified_adjacent(view, nodes[i - 1], nodes[i]))
            m = m.compose(gap);
        m = m.compose(node_step(nfa, nodes[i]));
    }
    m = m.compose(gap);

    Relation r(vpa.m);
    for (std::size_t p = 0; p < vpa.m; ++p)
        for (std::size_t q = 0; q < vpa.m; ++q) {
            const std::size_t row = nfa.pair_index(p, q);
            for (std::size_t v = 0; v < nfa.nstates; ++v)
                if (nfa.finals[v] && m.get(row, v)) {
                    r.set(p, q);
                    break;
                }
        }
    return r;
}

} // namespace vplt
