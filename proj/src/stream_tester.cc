/* stream_tester.cc -- streaming membership tester with sketched peaks */

#include "vplt/stream_tester.hh"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "vplt/exact.hh"

namespace vplt {

namespace {

std::uint64_t ceil_log2(std::uint64_t n) {
    std::uint64_t l = 0;
    std::uint64_t v = 1;
    while (v < n) {
        v = v <= (UINT64_MAX >> 1) ? v << 1 : UINT64_MAX;
        ++l;
    }
    return std::max<std::uint64_t>(l, 1);
}

std::uint64_t ceil_to_u64(long double x) {
    if (x < 1.0L) return 1;
    const long double c = std::ceil(x);
    if (c >= 1.0e18L) return static_cast<std::uint64_t>(1.0e18L);
    return static_cast<std::uint64_t>(c);
}

std::uint64_t pow2_capped(std::uint64_t e) {
    return e >= 63 ? UINT64_MAX : (std::uint64_t{1} << e);
}

// alpha = 1 + eps/(6 log n) as a reduced fraction, with eps itself taken to
// one-in-a-million precision
std::pair<std::uint64_t, std::uint64_t> one_plus_eps_prime(double epsilon,
                                                           std::uint64_t log2n) {
    const std::uint64_t eps_num =
        std::max<std::uint64_t>(1, static_cast<std::uint64_t>(
                                       std::llround(epsilon * 1'000'000.0)));
    const std::uint64_t den = 1'000'000ULL * 6 * log2n;
    std::uint64_t num = den + eps_num;
    const std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

constexpr std::uint64_t kMaxInstantiableT = 1 << 20;

} // namespace

TesterParams TesterParams::derive(const Vpa& vpa, const TesterConfig& cfg) {
    if (cfg.n == 0)
        throw std::invalid_argument("tester needs the declared stream length n");
    TesterParams p;
    const std::uint64_t m = vpa.m;
    const std::uint64_t log2n = ceil_log2(std::max<std::uint64_t>(cfg.n, 2));
    const long double eps = cfg.epsilon;
    const long double log_eta =
        std::max<long double>(1.0L, std::log2(1.0L / cfg.eta));

    switch (cfg.profile) {
    case Profile::Theorem: {
        p.d = std::min(pow2_capped(m * m),
                       std::max<std::uint64_t>(1, vpa.sigma_diameter()));
        const long double m4 = static_cast<long double>(m) * m * m * m;
        const long double d2 = static_cast<long double>(p.d) * p.d;
        const long double l2 = static_cast<long double>(log2n) * log2n;
        p.T = ceil_to_u64(2304.0L * m4 * d2 * l2 * log_eta / (eps * eps));
        p.k = ceil_to_u64(24.0L * m * p.d * log2n / eps);
        p.t = std::max<std::uint64_t>(1, p.T / (4 * p.k));
        std::tie(p.alpha_num, p.alpha_den) = one_plus_eps_prime(cfg.epsilon, log2n);
        break;
    }
    case Profile::Peak: {
        SlicingNfa nfa = build_slicing(vpa);
        p.d = std::min<std::uint64_t>(2 * m * m,
                                      std::max<std::size_t>(1, nfa.diameter));
        const long double eta_prime =
            cfg.eta / static_cast<long double>(std::max<std::uint64_t>(cfg.n, 1));
        ApproxParams ap = ApproxParams::derive(m, p.d, cfg.epsilon,
                                               static_cast<double>(eta_prime), true);
        p.k = ap.k;
        p.t = ap.t;
        p.T = ap.T;
        std::tie(p.alpha_num, p.alpha_den) = one_plus_eps_prime(cfg.epsilon, log2n);
        break;
    }
    case Profile::Desk:
        p.d = 2 * m * m;
        p.T = 16;
        p.k = 4;
        p.t = 1;
        p.alpha_num = 2;
        p.alpha_den = 1;
        break;
    }

    if (cfg.T_override) p.T = *cfg.T_override;
    if (cfg.k_override) p.k = *cfg.k_override;
    if (cfg.alpha_override) {
        p.alpha_num = cfg.alpha_override->first;
        p.alpha_den = cfg.alpha_override->second;
    }
    if (p.T == 0 || p.k == 0 || p.alpha_num <= p.alpha_den || p.alpha_den == 0)
        throw std::invalid_argument("tester parameters must satisfy T,k >= 1, alpha > 1");
    return p;
}

StreamTester::StreamTester(const Vpa& vpa, const TesterConfig& cfg)
    : vpa_(vpa), nfa_(build_slicing(vpa)), cfg_(cfg),
      params_(TesterParams::derive(vpa, cfg)), rng_(cfg.seed),
      r_temp_(Relation::identity(vpa.m)) {
    if (params_.T > kMaxInstantiableT)
        throw std::invalid_argument(
            "derived T=" + std::to_string(params_.T) +
            " is too large to instantiate; override T or use the desk profile");
    storage_check_every_ = std::max<std::uint64_t>(1, cfg_.n / 4096);
    u0_ = fresh_sketch();
    report_.seed = cfg_.seed;
    report_.n = cfg_.n;
    report_.epsilon = cfg_.epsilon;
    report_.eta = cfg_.eta;
    report_.params = params_;
}

PeakSketch StreamTester::fresh_sketch() const {
    PeakSketch sk;
    sk.d = SuffixSampling<WkCell>(params_.alpha_num, params_.alpha_den,
                                  2 * params_.T);
    return sk;
}

void StreamTester::append(PeakSketch& sk, const WeightedLetter& l, SymClass cls) {
    if (sk.empty()) {
        sk.first_weight = l.weight;
        sk.first_height = l.height;
        sk.start_position = l.position;
    }
    sk.total_weight += l.weight;
    if (cls == SymClass::Pop) sk.has_pop = true;
    sk.max_depth = std::max(sk.max_depth, l.depth);
    const std::uint64_t k = params_.k;
    sk.d.append_letter(l, cls, rng_, [k] { return WkCell(k); });
    sk.d.simplify();
    if (cfg_.exact_mode) sk.letters.push_back(l);
}

Relation StreamTester::relation_whole(const PeakSketch& sk) const {
    if (cfg_.exact_mode)
        return relation_of_weighted(vpa_, sk.letters, 0, sk.letters.size());
    return relation_of_entry(sk, 0);
}

Relation StreamTester::relation_of_entry(const PeakSketch& sk,
                                         std::size_t entry) const {
    std::vector<SampleFragment> fragments;
    fragments.reserve(sk.d.entries[entry].samples.size());
    for (const auto& cell : sk.d.entries[entry].samples)
        if (cell.started()) fragments.push_back(cell.fragment());
    return approximate_relation(vpa_, nfa_, fragments);
}

bool StreamTester::feed(int symbol) {
    if (dead_) return false;
    ++report_.n_read;
    const SymClass cls = vpa_.symbol_class[symbol];

    WeightedLetter l;
    l.symbol = symbol;
    l.position = pos_++;
    switch (cls) {
    case SymClass::Push:
        l.height = height_++;
        break;
    case SymClass::Pop:
        if (height_ == 0) {
            dead_ = true;
            return false;
        }
        l.height = --height_;
        break;
    case SymClass::Neutral:
        l.height = height_;
        break;
    }
    l.right_side = u0_.has_pop || cls == SymClass::Pop;

    if (cls == SymClass::Push && u0_.has_pop) {
        stack_.push_back(std::move(u0_));
        report_.max_stack = std::max(report_.max_stack, stack_.size());
        u0_ = fresh_sketch();
        l.right_side = false;
    }

    append(u0_, l, cls);
    if (!u0_.empty() && u0_.unmatched_pushes() == 0 &&
        u0_.d.entries.front().unmatched_pops == 0)
        merge_balanced();
    absorb();
    note_storage(report_.n_read % storage_check_every_ == 0);
    return true;
}

void StreamTester::merge_balanced() {
    Relation r = relation_whole(u0_);
    const std::uint32_t depth = u0_.max_depth + 1;

    if (stack_.empty()) {
        r_temp_ = compose(r_temp_, r);
        u0_ = fresh_sketch();
        return;
    }

    WeightedLetter rl;
    rl.rel = std::make_shared<const Relation>(std::move(r));
    rl.weight = u0_.total_weight;
    rl.position = u0_.start_position;
    rl.height = height_;
    rl.right_side = true;
    rl.depth = depth;

    PeakSketch v = std::move(stack_.back());
    stack_.pop_back();
    append(v, rl, SymClass::Neutral);
    v.max_depth = std::max(v.max_depth, depth);
    u0_ = std::move(v);
}

void StreamTester::absorb() {
    while (!stack_.empty()) {
        PeakSketch& v = stack_.back();

        // largest (longest) suffix free of unmatched pushes: everything at or
        // above the peak's unmatched-push plateau, i.e. inside its maximal
        // balanced suffix
        std::size_t i = 0;
        while (i < v.d.entries.size() && v.d.entries[i].unmatched_pushes > 0) ++i;
        if (i == 0 || i == v.d.entries.size()) break; // no usable split

        const std::uint64_t low = v.d.entries[i].weight_low;
        const std::uint64_t high = v.d.entries[i - 1].diff_next_is_one
                                       ? v.d.entries[i].weight_high
                                       : v.d.entries[i - 1].weight_high;
        if (2 * u0_.total_weight < low) break;

        const std::uint64_t h_base = v.first_height + v.unmatched_pushes();
        const std::uint64_t v_end = v.start_position + v.total_weight;

        WeightedLetter rl;
        std::uint32_t depth;
        if (cfg_.exact_mode) {
            std::size_t idx = 0;
            while (idx < v.letters.size() && v.letters[idx].height < h_base) ++idx;
            std::uint64_t w = 0;
            depth = 0;
            for (std::size_t j = idx; j < v.letters.size(); ++j) {
                w += v.letters[j].weight;
                depth = std::max(depth, v.letters[j].depth);
            }
            ++depth;
            rl.rel = std::make_shared<const Relation>(
                relation_of_weighted(vpa_, v.letters, idx, v.letters.size()));
            rl.weight = w;
            rl.position = idx < v.letters.size() ? v.letters[idx].position : v_end;
            v.letters.resize(idx);
        } else {
            depth = v.max_depth + 1;
            rl.rel = std::make_shared<const Relation>(relation_of_entry(v, i));
            rl.weight = low;
            rl.position = v_end - low;
            rl.estimated = !(v.d.entries[i - 1].diff_next_is_one && low == high);
        }
        rl.height = h_base;
        rl.right_side = false;
        rl.depth = depth;

        // D_{v|v1}: drop the suffixes inside the balanced part, rewrite the
        // kept samples so their view matches the compressed word
        v.d.entries.resize(i);
        for (auto& e : v.d.entries)
            for (auto& cell : e.samples) cell.compress_tail(h_base, rl, SymClass::Neutral);

        // new shortest suffix: the relation letter alone
        SuffixEntry<WkCell> re;
        re.weight_low = low;
        re.weight_high = high;
        re.samples.reserve(2 * params_.T);
        for (std::uint64_t j = 0; j < 2 * params_.T; ++j) {
            re.samples.emplace_back(params_.k);
            re.samples.back().start(rl, SymClass::Neutral);
        }
        v.d.entries.push_back(std::move(re));

        v.d.concatenate_word(std::move(u0_.d), u0_.total_weight,
                             u0_.unmatched_pushes(), 0, rng_);
        v.d.simplify();

        if (cfg_.exact_mode) {
            v.letters.push_back(rl);
            for (auto& l : u0_.letters) v.letters.push_back(std::move(l));
        }
        v.total_weight += u0_.total_weight;
        v.has_pop = u0_.has_pop;
        v.max_depth = std::max({v.max_depth, u0_.max_depth, depth});

        u0_ = std::move(v);
        stack_.pop_back();
    }
}

void StreamTester::note_storage(bool force) {
    if (!force) return;
    std::size_t stored = u0_.stored_letters();
    for (const auto& sk : stack_) stored += sk.stored_letters();
    if (stored > report_.stored_items_peak) {
        report_.stored_items_peak = stored;
        report_.decomposition_sizes.clear();
        report_.decomposition_sizes.push_back(u0_.d.size());
        for (const auto& sk : stack_) report_.decomposition_sizes.push_back(sk.d.size());
    }
}

TesterReport StreamTester::finish() {
    note_storage(true);
    if (dead_ || !u0_.empty() || !stack_.empty()) {
        report_.verdict = "reject";
        report_.reason = "unbalanced";
        return report_;
    }
    if (vpa_.relation_accepts(r_temp_)) {
        report_.verdict = "accept";
        report_.reason = "";
    } else {
        report_.verdict = "reject";
        report_.reason = "rejected";
    }
    return report_;
}

TesterReport run_tester(const Vpa& vpa, const std::vector<int>& word,
                        const TesterConfig& cfg) {
    StreamTester t(vpa, cfg);
    for (int s : word) t.feed(s);
    return t.finish();
}

} // namespace vplt
