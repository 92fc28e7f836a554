/* generators.cc -- fixed machines and self-checking input generators */

#include "vplt/generators.hh"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "vplt/exact.hh"

namespace vplt {

Vpa disj_machine() {
    return parse_vpa(R"(# set-disjointness peak language
states 3
initial 0
final 0 2
stack g0 g1
neutral a 0 0
neutral a 1 1
neutral a 2 2
push 0 0 1 g0
push 0 1 1 g0
push 1 0 1 g1
push 1 1 1 g1
pop 0~ 1 g0 2
pop 0~ 1 g1 2
pop 0~ 2 g0 2
pop 0~ 2 g1 2
pop 1~ 1 g0 2
pop 1~ 2 g0 2
)");
}

Vpa paren_machine() {
    return parse_vpa(R"(# nonempty balanced parentheses
states 2
initial 0
final 1
stack g
push ( 0 1 g
push ( 1 1 g
pop ) 1 g 1
)");
}

Vpa four_state_machine() {
    return parse_vpa(R"(# nondeterministic pushes, state-splitting neutrals
states 4
initial 0
final 0 3
stack g h
push c 0 1 g
push c 0 2 h
push c 3 1 g
neutral a 1 1
neutral a 2 3
neutral b 0 0
neutral b 3 2
pop r 1 g 0
pop r 2 h 3
pop r 3 h 3
pop r 3 g 0
)");
}

namespace {

int need_symbol(const Vpa& vpa, const std::string& token) {
    const int id = vpa.symbol_id(token);
    if (id < 0) throw std::invalid_argument("generator: machine lacks symbol " + token);
    return id;
}

} // namespace

std::vector<int> gen_disj_member(const Vpa& disj, std::size_t n, std::size_t j,
                                 RandomSource& rng) {
    if (n < 2 * j) throw std::invalid_argument("gen_disj_member: n < 2j");
    const int a = need_symbol(disj, "a");
    const int push[2] = {need_symbol(disj, "0"), need_symbol(disj, "1")};
    const int pop[2] = {need_symbol(disj, "0~"), need_symbol(disj, "1~")};

    // x(i), y(i) uniform over the three non-violating combinations
    std::vector<int> x(j), y(j);
    for (std::size_t i = 0; i < j; ++i) {
        switch (rng.below(3)) {
        case 0: x[i] = 0; y[i] = 0; break;
        case 1: x[i] = 0; y[i] = 1; break;
        default: x[i] = 1; y[i] = 0; break;
        }
    }
    std::vector<std::size_t> pad(2 * j + 1, 0);
    for (std::size_t i = 0; i < n - 2 * j; ++i) ++pad[rng.below(2 * j + 1)];

    std::vector<int> word;
    word.reserve(n);
    auto run = [&](std::size_t slot) {
        word.insert(word.end(), pad[slot], a);
    };
    for (std::size_t i = 0; i < j; ++i) {
        run(i);
        word.push_back(push[x[i]]);
    }
    run(j);
    for (std::size_t i = j; i-- > 0;) {
        word.push_back(pop[y[i]]);
        run(2 * j - i);
    }

    if (word.size() != n || !run_exact(disj, word).accepted)
        throw std::logic_error("gen_disj_member: self-check failed");
    return word;
}

std::vector<int> gen_disj_far(const Vpa& disj, std::size_t n, std::size_t j) {
    if (n < 2 * j) throw std::invalid_argument("gen_disj_far: n < 2j");
    const int a = need_symbol(disj, "a");
    const int push1 = need_symbol(disj, "1");
    const int pop1 = need_symbol(disj, "1~");

    std::vector<int> word;
    word.reserve(n);
    word.insert(word.end(), j, push1);
    word.insert(word.end(), n - 2 * j, a);
    word.insert(word.end(), j, pop1);

    // self-check of the farness certificate: every matched pair is (1, 1~),
    // which no member contains, so each of the j pairs forces >= 2 edits
    if (j > 0 && run_exact(disj, word).accepted)
        throw std::logic_error("gen_disj_far: instance unexpectedly accepted");
    return word;
}

std::vector<int> gen_random_balanced(const Vpa& vpa, std::size_t n,
                                     RandomSource& rng) {
    std::vector<int> neutrals, pushes, pops;
    for (int s = 0; s < static_cast<int>(vpa.num_symbols()); ++s) {
        switch (vpa.symbol_class[s]) {
        case SymClass::Push: pushes.push_back(s); break;
        case SymClass::Pop: pops.push_back(s); break;
        case SymClass::Neutral: neutrals.push_back(s); break;
        }
    }
    const bool have_pairs = !pushes.empty() && !pops.empty();

    std::size_t np; // matched pairs
    if (neutrals.empty()) {
        if (n % 2 != 0 || !have_pairs)
            throw std::invalid_argument("gen_random_balanced: no balanced word of this length");
        np = n / 2;
    } else {
        np = have_pairs ? rng.below(n / 2 + 1) : 0;
    }

    // +1 push, -1 pop, 0 neutral; shuffle, then rotate to the cyclic shift
    // with nonnegative prefix sums
    std::vector<int> steps;
    steps.insert(steps.end(), np, +1);
    steps.insert(steps.end(), np, -1);
    steps.insert(steps.end(), n - 2 * np, 0);
    for (std::size_t i = steps.size(); i > 1; --i)
        std::swap(steps[i - 1], steps[rng.below(i)]);
    long long sum = 0, min_sum = 0;
    std::size_t cut = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        sum += steps[i];
        if (sum < min_sum) {
            min_sum = sum;
            cut = i + 1;
        }
    }
    std::rotate(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(cut),
                steps.end());

    std::vector<int> word;
    word.reserve(n);
    for (int st : steps) {
        const auto& pool = st > 0 ? pushes : st < 0 ? pops : neutrals;
        word.push_back(pool[rng.below(pool.size())]);
    }
    if (!check_balanced(vpa, word))
        throw std::logic_error("gen_random_balanced: self-check failed");
    return word;
}

MemberSampler::MemberSampler(const Vpa& vpa, std::size_t max_len) : vpa_(vpa) {
    rels_.resize(max_len + 1);
    rels_[0].push_back(Relation::identity(vpa.m));
    std::vector<int> neutrals, pushes, pops;
    for (int s = 0; s < static_cast<int>(vpa.num_symbols()); ++s) {
        switch (vpa.symbol_class[s]) {
        case SymClass::Push: pushes.push_back(s); break;
        case SymClass::Pop: pops.push_back(s); break;
        case SymClass::Neutral: neutrals.push_back(s); break;
        }
    }
    for (std::size_t l = 1; l <= max_len; ++l) {
        std::unordered_set<Relation, BitMatrixHash> seen;
        for (int a : neutrals)
            for (const auto& r1 : rels_[l - 1])
                seen.insert(compose(vpa.neutral_rel[a], r1));
        if (l >= 2)
            for (std::size_t l1 = 0; l1 + 2 <= l; ++l1)
                for (const auto& r1 : rels_[l1])
                    for (int c : pushes)
                        for (int p : pops) {
                            const Relation sur = vpa.surround(c, r1, p);
                            if (sur.empty()) continue;
                            for (const auto& r2 : rels_[l - 2 - l1])
                                seen.insert(compose(sur, r2));
                        }
        rels_[l].assign(seen.begin(), seen.end());
    }
}

bool MemberSampler::has_member(std::size_t n) const {
    if (n >= rels_.size()) throw std::out_of_range("MemberSampler: beyond table");
    for (const auto& r : rels_[n])
        if (vpa_.relation_accepts(r)) return true;
    return false;
}

std::vector<int> MemberSampler::sample(std::size_t n, RandomSource& rng) const {
    if (n >= rels_.size()) throw std::out_of_range("MemberSampler: beyond table");
    std::vector<const Relation*> accepting;
    for (const auto& r : rels_[n])
        if (vpa_.relation_accepts(r)) accepting.push_back(&r);
    if (accepting.empty())
        throw std::invalid_argument("MemberSampler: no member of length " +
                                    std::to_string(n));
    const Relation& target = *accepting[rng.below(accepting.size())];
    std::vector<int> word = sample_rel(n, target, rng);
    if (word.size() != n || !run_exact(vpa_, word).accepted)
        throw std::logic_error("MemberSampler: self-check failed");
    return word;
}

std::vector<int> MemberSampler::sample_rel(std::size_t len, const Relation& target,
                                           RandomSource& rng) const {
    if (len == 0) return {};
    struct Option {
        int first;                 // leading symbol
        int pop = -1;              // matching pop for a leading push
        std::size_t l1 = 0;        // inner length
        const Relation* r1 = nullptr;
        const Relation* r2 = nullptr;
    };
    std::vector<Option> options;
    for (int a = 0; a < static_cast<int>(vpa_.num_symbols()); ++a) {
        if (!vpa_.is_neutral(a)) continue;
        for (const auto& r1 : rels_[len - 1])
            if (compose(vpa_.neutral_rel[a], r1) == target)
                options.push_back({a, -1, 0, &r1, nullptr});
    }
    if (len >= 2)
        for (int c = 0; c < static_cast<int>(vpa_.num_symbols()); ++c) {
            if (!vpa_.is_push(c)) continue;
            for (int p = 0; p < static_cast<int>(vpa_.num_symbols()); ++p) {
                if (!vpa_.is_pop(p)) continue;
                for (std::size_t l1 = 0; l1 + 2 <= len; ++l1)
                    for (const auto& r1 : rels_[l1]) {
                        const Relation sur = vpa_.surround(c, r1, p);
                        if (sur.empty()) continue;
                        for (const auto& r2 : rels_[len - 2 - l1])
                            if (compose(sur, r2) == target)
                                options.push_back({c, p, l1, &r1, &r2});
                    }
            }
        }
    if (options.empty())
        throw std::logic_error("MemberSampler: no derivation for a tabled relation");

    const Option& o = options[rng.below(options.size())];
    std::vector<int> word{o.first};
    if (o.pop < 0) {
        std::vector<int> rest = sample_rel(len - 1, *o.r1, rng);
        word.insert(word.end(), rest.begin(), rest.end());
    } else {
        std::vector<int> inner = sample_rel(o.l1, *o.r1, rng);
        word.insert(word.end(), inner.begin(), inner.end());
        word.push_back(o.pop);
        std::vector<int> rest = sample_rel(len - 2 - o.l1, *o.r2, rng);
        word.insert(word.end(), rest.begin(), rest.end());
    }
    return word;
}

} // namespace vplt
