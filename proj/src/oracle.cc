/* oracle.cc -- brute-force distances, acceptance, and subsequence search */

#include "vplt/oracle.hh"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace vplt {

Forest parse_forest(const Vpa& vpa, const std::vector<WeightedLetter>& word) {
    Forest root;
    std::vector<std::pair<WeightedLetter, Forest>> open; // pending pushes
    auto top = [&]() -> Forest& { return open.empty() ? root : open.back().second; };
    for (const auto& l : word) {
        switch (l.cls(vpa)) {
        case SymClass::Push:
            open.emplace_back(l, Forest{});
            break;
        case SymClass::Pop: {
            if (open.empty()) throw std::invalid_argument("parse_forest: unmatched pop");
            ForestNode node;
            node.open = std::move(open.back().first);
            node.children = std::move(open.back().second);
            node.close = l;
            open.pop_back();
            top().push_back(std::move(node));
            break;
        }
        case SymClass::Neutral:
            top().push_back(ForestNode{l, std::nullopt, {}});
            break;
        }
    }
    if (!open.empty()) throw std::invalid_argument("parse_forest: unmatched push");
    return root;
}

std::vector<WeightedLetter> weighted_word_of(const Vpa& vpa,
                                             const std::vector<int>& word) {
    std::vector<WeightedLetter> out;
    out.reserve(word.size());
    std::uint64_t h = 0, pos = 0;
    bool saw_pop = false;
    for (int s : word) {
        WeightedLetter l;
        l.symbol = s;
        l.position = pos++;
        switch (vpa.symbol_class[s]) {
        case SymClass::Push:
            l.height = h++;
            break;
        case SymClass::Pop:
            if (h == 0) throw std::invalid_argument("weighted_word_of: unmatched pop");
            l.height = --h;
            saw_pop = true;
            break;
        case SymClass::Neutral:
            l.height = h;
            break;
        }
        l.right_side = saw_pop;
        out.push_back(l);
    }
    return out;
}

namespace {

std::string letter_key(const WeightedLetter& l) {
    std::string s = std::to_string(l.symbol) + ":" + std::to_string(l.weight);
    if (l.is_relation()) s += ":" + l.rel->to_string();
    return s;
}

bool letter_eq(const WeightedLetter& a, const WeightedLetter& b) {
    if (a.weight != b.weight || a.is_relation() != b.is_relation()) return false;
    if (a.is_relation()) return *a.rel == *b.rel;
    return a.symbol == b.symbol;
}

std::uint64_t node_cost(const ForestNode& n) {
    return n.open.weight + (n.close ? n.close->weight : 0);
}

std::uint64_t forest_cost(const Forest& f) {
    std::uint64_t c = 0;
    for (const auto& n : f) {
        c += node_cost(n);
        c += forest_cost(n.children);
    }
    return c;
}

bool label_eq(const ForestNode& a, const ForestNode& b) {
    if (a.is_pair() != b.is_pair()) return false;
    if (!letter_eq(a.open, b.open)) return false;
    return !a.is_pair() || letter_eq(*a.close, *b.close);
}

void serialize_forest(const Forest& f, std::string& out) {
    for (const auto& n : f) {
        out += letter_key(n.open);
        if (n.is_pair()) {
            out += "(";
            serialize_forest(n.children, out);
            out += ")" + letter_key(*n.close);
        }
        out += ";";
    }
}

std::string forest_key(const Forest& f) {
    std::string s;
    serialize_forest(f, s);
    return s;
}

Forest splice_first(const Forest& f) {
    Forest out(f.front().children);
    out.insert(out.end(), f.begin() + 1, f.end());
    return out;
}

Forest rest_of(const Forest& f) { return Forest(f.begin() + 1, f.end()); }

std::uint64_t forest_dist(const Forest& a, const Forest& b,
                          std::map<std::pair<std::string, std::string>,
                                   std::uint64_t>& memo) {
    if (a.empty()) return forest_cost(b);
    if (b.empty()) return forest_cost(a);
    const auto key = std::make_pair(forest_key(a), forest_key(b));
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    std::uint64_t best =
        node_cost(a.front()) + forest_dist(splice_first(a), b, memo);
    best = std::min(best,
                    node_cost(b.front()) + forest_dist(a, splice_first(b), memo));
    if (label_eq(a.front(), b.front()))
        best = std::min(best,
                        forest_dist(a.front().children, b.front().children, memo) +
                            forest_dist(rest_of(a), rest_of(b), memo));

    memo.emplace(key, best);
    return best;
}

} // namespace

std::uint64_t bdist(const Vpa& vpa, const std::vector<WeightedLetter>& u,
                    const std::vector<WeightedLetter>& v) {
    const Forest fu = parse_forest(vpa, u);
    const Forest fv = parse_forest(vpa, v);
    std::map<std::pair<std::string, std::string>, std::uint64_t> memo;
    return forest_dist(fu, fv, memo);
}

namespace {

struct FlatNode {
    const ForestNode* node;
    std::size_t parent; // index into the flat list; SIZE_MAX at the roots
};

void flatten(const Forest& f, std::size_t parent, std::vector<FlatNode>& out) {
    for (const auto& n : f) {
        out.push_back({&n, parent});
        flatten(n.children, out.size() - 1, out);
    }
}

void emit_subset(const Forest& f, std::size_t& idx, std::uint64_t mask,
                 std::string& word, std::uint64_t& weight) {
    for (const auto& n : f) {
        const bool keep = (mask >> idx++) & 1;
        if (keep) {
            word += letter_key(n.open) + ",";
            weight += n.open.weight;
        }
        emit_subset(n.children, idx, mask, word, weight);
        if (n.is_pair() && keep) {
            word += letter_key(*n.close) + ",";
            weight += n.close->weight;
        }
    }
}

std::map<std::string, std::uint64_t> all_subsequences(const Forest& f) {
    std::vector<FlatNode> flat;
    flatten(f, SIZE_MAX, flat);
    if (flat.size() > 20)
        throw std::invalid_argument("bdist_bruteforce: word too large");
    std::map<std::string, std::uint64_t> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << flat.size()); ++mask) {
        std::string word;
        std::uint64_t weight = 0;
        std::size_t idx = 0;
        emit_subset(f, idx, mask, word, weight);
        auto [it, fresh] = out.try_emplace(word, weight);
        if (!fresh && it->second != weight)
            throw std::logic_error("bdist_bruteforce: weight mismatch");
    }
    return out;
}

} // namespace

std::uint64_t bdist_bruteforce(const Vpa& vpa, const std::vector<WeightedLetter>& u,
                               const std::vector<WeightedLetter>& v) {
    const Forest fu = parse_forest(vpa, u);
    const Forest fv = parse_forest(vpa, v);
    const auto su = all_subsequences(fu);
    const auto sv = all_subsequences(fv);
    const std::uint64_t wu = forest_cost(fu), wv = forest_cost(fv);
    std::uint64_t best = wu + wv; // delete everything, insert everything
    for (const auto& [word, weight] : su) {
        auto it = sv.find(word);
        if (it != sv.end())
            best = std::min(best, wu + wv - 2 * weight);
    }
    return best;
}

std::optional<std::uint64_t> bdist_to_language(const Vpa& vpa,
                                               const std::vector<int>& word,
                                               std::uint64_t bound) {
    if (!check_balanced(vpa, word))
        throw std::invalid_argument("bdist_to_language: unbalanced input");

    std::vector<int> neutrals, pushes, pops;
    for (int s = 0; s < static_cast<int>(vpa.num_symbols()); ++s) {
        switch (vpa.symbol_class[s]) {
        case SymClass::Push: pushes.push_back(s); break;
        case SymClass::Pop: pops.push_back(s); break;
        case SymClass::Neutral: neutrals.push_back(s); break;
        }
    }

    using Item = std::pair<std::uint64_t, std::vector<int>>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    std::set<std::vector<int>> seen;
    queue.emplace(0, word);

    // matched pop of the push at position i
    auto match_of = [&](const std::vector<int>& w, std::size_t i) {
        std::size_t depth = 0;
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            if (vpa.is_push(w[j])) ++depth;
            else if (vpa.is_pop(w[j])) {
                if (depth == 0) return j;
                --depth;
            }
        }
        throw std::logic_error("match_of: unbalanced");
    };

    while (!queue.empty()) {
        auto [cost, w] = queue.top();
        queue.pop();
        if (!seen.insert(w).second) continue;
        if (accepts(vpa, w)) return cost;
        if (cost >= bound) continue;

        auto enqueue = [&](std::uint64_t c, std::vector<int>&& next) {
            if (c <= bound && !seen.count(next)) queue.emplace(c, std::move(next));
        };

        for (std::size_t i = 0; i < w.size(); ++i) {
            if (vpa.is_neutral(w[i])) {
                std::vector<int> next = w;
                next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
                enqueue(cost + 1, std::move(next));
            } else if (vpa.is_push(w[i])) {
                const std::size_t j = match_of(w, i);
                std::vector<int> next = w;
                next.erase(next.begin() + static_cast<std::ptrdiff_t>(j));
                next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
                enqueue(cost + 2, std::move(next));
            }
        }
        for (std::size_t i = 0; i <= w.size(); ++i) {
            for (int a : neutrals) {
                std::vector<int> next = w;
                next.insert(next.begin() + static_cast<std::ptrdiff_t>(i), a);
                enqueue(cost + 1, std::move(next));
            }
            for (std::size_t j = i; j <= w.size(); ++j)
                for (int c : pushes)
                    for (int r : pops) {
                        std::vector<int> next = w;
                        next.insert(next.begin() + static_cast<std::ptrdiff_t>(j), r);
                        next.insert(next.begin() + static_cast<std::ptrdiff_t>(i), c);
                        enqueue(cost + 2, std::move(next));
                    }
        }
    }
    return std::nullopt;
}

namespace {

bool sliced_eq(const SlicedLetter& a, const SlicedLetter& b) {
    if (a.kind != b.kind || a.weight != b.weight) return false;
    if (a.rel || b.rel) {
        if (!a.rel || !b.rel) return false;
        if (!(*a.rel == *b.rel)) return false;
    }
    return a.a_sym == b.a_sym && a.b_sym == b.b_sym && a.sym == b.sym;
}

} // namespace

std::uint64_t sliced_dist(const std::vector<SlicedLetter>& a,
                          const std::vector<SlicedLetter>& b) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<std::vector<std::uint64_t>> d(n + 1,
                                              std::vector<std::uint64_t>(m + 1, 0));
    for (std::size_t i = 1; i <= n; ++i) d[i][0] = d[i - 1][0] + a[i - 1].weight;
    for (std::size_t j = 1; j <= m; ++j) d[0][j] = d[0][j - 1] + b[j - 1].weight;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= m; ++j) {
            d[i][j] = std::min(d[i - 1][j] + a[i - 1].weight,
                               d[i][j - 1] + b[j - 1].weight);
            if (sliced_eq(a[i - 1], b[j - 1]))
                d[i][j] = std::min(d[i][j], d[i - 1][j - 1]);
        }
    return d[n][m];
}

bool oracle_accepts(const Vpa& vpa, const std::vector<int>& word) {
    using Config = std::pair<int, std::vector<int>>; // state, stack contents
    std::set<Config> configs;
    for (int q : vpa.initial) configs.emplace(q, std::vector<int>{});

    for (int s : word) {
        std::set<Config> next;
        for (const auto& [p, stack] : configs) {
            switch (vpa.symbol_class[s]) {
            case SymClass::Push:
                for (std::size_t g = 0; g < vpa.num_stack(); ++g)
                    for (std::size_t q = 0; q < vpa.m; ++q)
                        if (vpa.push_rel[s][g].get(static_cast<std::size_t>(p), q)) {
                            std::vector<int> st = stack;
                            st.push_back(static_cast<int>(g));
                            next.emplace(static_cast<int>(q), std::move(st));
                        }
                break;
            case SymClass::Pop:
                if (!stack.empty()) {
                    const int g = stack.back();
                    for (std::size_t q = 0; q < vpa.m; ++q)
                        if (vpa.pop_rel[s][static_cast<std::size_t>(g)].get(
                                static_cast<std::size_t>(p), q)) {
                            std::vector<int> st(stack.begin(), stack.end() - 1);
                            next.emplace(static_cast<int>(q), std::move(st));
                        }
                }
                break;
            case SymClass::Neutral:
                for (std::size_t q = 0; q < vpa.m; ++q)
                    if (vpa.neutral_rel[s].get(static_cast<std::size_t>(p), q))
                        next.emplace(static_cast<int>(q), stack);
                break;
            }
        }
        configs = std::move(next);
        if (configs.empty()) return false;
    }
    for (const auto& [q, stack] : configs)
        if (stack.empty() && vpa.is_final(q)) return true;
    return false;
}

} // namespace vplt
