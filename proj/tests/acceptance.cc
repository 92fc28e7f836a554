/* acceptance.cc -- end-to-end checks of the recognizer, samplers, tester,
   oracles and harness; one printed line per criterion */

#include <algorithm>
#include <atomic>
#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hh"
#include "vplt/exact.hh"
#include "vplt/experiment.hh"
#include "vplt/generators.hh"
#include "vplt/oracle.hh"
#include "vplt/stream_tester.hh"
#include "vplt/suffix_sampling.hh"

using namespace vplt;
using boost::multiprecision::cpp_int;

namespace {

struct Result {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<std::vector<int>> collect_balanced(const Vpa& vpa, std::size_t max_len) {
    std::vector<std::vector<int>> words;
    vplt::testing::for_each_balanced(
        vpa, max_len, [&](const std::vector<int>& w) { words.push_back(w); });
    return words;
}

std::vector<std::vector<int>> collect_peaks(const Vpa& vpa, std::size_t max_len) {
    std::vector<std::vector<int>> words;
    vplt::testing::for_each_peak(
        vpa, max_len, [&](const std::vector<int>& w) { words.push_back(w); });
    return words;
}

std::uint64_t log_uniform(RandomSource& rng, std::uint64_t lo, std::uint64_t hi) {
    const double u = (static_cast<double>(rng.below(1u << 30)) + 0.5) / (1u << 30);
    const double v = std::exp(std::log(static_cast<double>(lo)) +
                              u * std::log(static_cast<double>(hi) /
                                           static_cast<double>(lo)));
    return std::min<std::uint64_t>(hi, std::max<std::uint64_t>(lo,
        static_cast<std::uint64_t>(std::llround(v))));
}

// ---------------------------------------------------------------- criterion 1

Result c1_exactness() {
    std::atomic<std::uint64_t> mismatches{0}, total{0};
    for (const Vpa& vpa : {disj_machine(), paren_machine(), four_state_machine()}) {
        const auto words = collect_balanced(vpa, 12);
        total += words.size();
#pragma omp parallel for schedule(dynamic, 256)
        for (std::size_t i = 0; i < words.size(); ++i)
            if (run_exact(vpa, words[i]).accepted != oracle_accepts(vpa, words[i]))
                ++mismatches;
    }
    std::ostringstream d;
    d << total.load() << " balanced words <=12, " << mismatches.load() << " mismatches";
    return {1, "exact recognizer vs configuration-set simulation", mismatches == 0, d.str()};
}

// ----------------------------------------------------------- criteria 2 and 3

std::pair<Result, Result> c2_c3_stack_and_depth() {
    const Vpa vpa = disj_machine();
    const std::size_t trials = 100000;
    const std::uint64_t max_n = 100000;
    std::atomic<std::uint64_t> stack_bad{0}, depth_bad{0}, ratio_bad{0};
#pragma omp parallel for schedule(dynamic, 64)
    for (std::size_t i = 0; i < trials; ++i) {
        Xoshiro256 rng(1000 + i);
        const std::uint64_t n = i == 0 ? max_n : log_uniform(rng, 2, max_n);
        const ExactResult res = run_exact(vpa, gen_random_balanced(vpa, n, rng));
        const double lg = std::log2(static_cast<double>(n));
        if (res.stats.max_stack > static_cast<std::size_t>(std::ceil(lg))) ++stack_bad;
        if (res.stats.max_depth >
            std::log(static_cast<double>(n)) / std::log(1.5) + 1e-9)
            ++depth_bad;
        if (!res.stats.compress_bound_ok) ++ratio_bad;
    }
    std::ostringstream d2, d3;
    d2 << trials << " random balanced runs up to n=" << max_n << ", "
       << stack_bad.load() << " stack-bound violations";
    d3 << ratio_bad.load() << " weight-ratio violations, " << depth_bad.load()
       << " depth-bound violations on the same suite";
    return {{2, "frozen-peak stack stays within ceil(log2 n)", stack_bad == 0, d2.str()},
            {3, "compression keeps letters <= 2/3 and depth <= log_1.5 n",
             depth_bad == 0 && ratio_bad == 0, d3.str()}};
}

// ---------------------------------------------------------------- criterion 4

Result c4_decomposition_size() {
    const std::uint64_t n = 100000;
    // 1 + eps/(6 log2 n) for eps = 0.2, log2 n = 17
    std::uint64_t ep_den = 1000000ULL * 6 * 17, ep_num = ep_den + 200000;
    const std::uint64_t g = std::gcd(ep_num, ep_den);
    ep_num /= g;
    ep_den /= g;
    std::uint64_t violations = 0;
    std::ostringstream d;
    for (auto [num, den] : {std::pair<std::uint64_t, std::uint64_t>{2, 1},
                            {11, 10},
                            {ep_num, ep_den}}) {
        Xoshiro256 rng(7);
        SuffixSampling<LetterSampler> dec(num, den, 1);
        cpp_int pa = 1, pb = 1; // num^s and den^s
        std::size_t s = 0;
        std::size_t worst = 0;
        for (std::uint64_t w = 1; w <= n; ++w) {
            WeightedLetter l;
            l.symbol = 0;
            l.position = w - 1;
            dec.append_letter(l, SymClass::Neutral, rng, [] { return LetterSampler(); });
            dec.simplify();
            while (pa < pb * w) {
                pa *= num;
                pb *= den;
                ++s;
            }
            if (dec.size() > 1 + 2 * s) ++violations;
            if (!dec.valid_decomposition()) ++violations;
            worst = std::max(worst, dec.size());
        }
        d << num << "/" << den << ": max size " << worst << "  ";
    }
    return {4, "online suffix decompositions stay within 1+2*ceil(log_a u)",
            violations == 0, d.str() + (violations ? "violations!" : "no violations")};
}

// ---------------------------------------------------------------- criterion 5

std::string factor_key(const WeightedWord& f) {
    std::string s;
    for (const auto& l : f.letters)
        s += std::to_string(l.symbol) + ":" + std::to_string(l.weight) + ",";
    return s;
}

Result c5_sampler_distributions() {
    std::uint64_t bad = 0, words = 0;
    for (std::size_t len = 1; len <= 6; ++len) {
        std::vector<std::uint64_t> ws(len, 1);
        for (;;) {
            ++words;
            std::uint64_t total = 0;
            std::vector<WeightedLetter> letters(len);
            for (std::size_t i = 0; i < len; ++i) {
                letters[i].symbol = static_cast<int>(i);
                letters[i].weight = ws[i];
                letters[i].position = total;
                total += ws[i];
            }
            // reservoir marginal
            const auto res = enumerate_outcomes([&](RandomSource& rng) {
                ReservoirCell cell;
                for (const auto& l : letters) cell.feed(l, rng);
                return std::to_string(cell.letter().symbol);
            });
            for (std::size_t i = 0; i < len; ++i)
                if (res.at(std::to_string(i)) !=
                    Frac(static_cast<std::int64_t>(ws[i]),
                         static_cast<std::int64_t>(total)))
                    ++bad;
            // k-factor marginal: weight-proportional start, deterministic tail
            WeightedWord word;
            for (const auto& l : letters) word.append(l);
            for (std::uint64_t k : {std::uint64_t{1}, std::uint64_t{2}}) {
                std::map<std::string, Frac> want;
                for (std::size_t i = 0; i < len; ++i) {
                    auto [it, fresh] = want.try_emplace(
                        factor_key(k_factor_at(word, i, k)),
                        Frac(static_cast<std::int64_t>(ws[i]),
                             static_cast<std::int64_t>(total)));
                    if (!fresh)
                        it->second += Frac(static_cast<std::int64_t>(ws[i]),
                                           static_cast<std::int64_t>(total));
                }
                const auto got = enumerate_outcomes([&](RandomSource& rng) {
                    ReservoirCell cell;
                    std::size_t pick = 0;
                    for (std::size_t i = 0; i < len; ++i) {
                        cell.feed(letters[i], rng);
                        if (cell.letter().symbol == static_cast<int>(i)) pick = i;
                    }
                    return factor_key(k_factor_at(word, pick, k));
                });
                if (got != want) ++bad;
            }
            // next weight tuple in {1,2,3}^len
            std::size_t j = 0;
            while (j < len && ws[j] == 3) ws[j++] = 1;
            if (j == len) break;
            ++ws[j];
        }
    }
    std::ostringstream d;
    d << words << " weighted words, exact rational marginals, " << bad << " mismatches";
    return {5, "reservoir and k-factor samplers are weight-proportional", bad == 0,
            d.str()};
}

// ---------------------------------------------------------------- criterion 6

// the sliced word as (weight, underlying original positions) in slicing order
struct SlicedRep {
    std::uint64_t weight;
    std::vector<std::uint64_t> positions;
};

std::vector<SlicedRep> sliced_rep(const Vpa& vpa, const std::vector<int>& word) {
    struct Level {
        std::vector<std::uint64_t> left, right;
        std::vector<std::uint64_t> pair;
    };
    std::vector<Level> levels(1);
    std::size_t h = 0, top = 0;
    bool seen_pop = false;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (vpa.is_push(word[i])) {
            if (levels.size() <= h + 1) levels.resize(h + 2);
            levels[h].pair.push_back(i);
            ++h;
            top = std::max(top, h);
        } else if (vpa.is_pop(word[i])) {
            --h;
            seen_pop = true;
            levels[h].pair.push_back(i);
        } else {
            if (levels.size() <= h) levels.resize(h + 1);
            (seen_pop ? levels[h].right : levels[h].left).push_back(i);
        }
    }
    std::vector<SlicedRep> out;
    for (std::size_t lev = 0; lev <= top && lev < levels.size(); ++lev) {
        for (std::uint64_t p : levels[lev].left) out.push_back({1, {p}});
        for (auto it = levels[lev].right.rbegin(); it != levels[lev].right.rend(); ++it)
            out.push_back({1, {*it}});
        if (!levels[lev].pair.empty()) out.push_back({2, levels[lev].pair});
    }
    return out;
}

Result c6_over_sampling() {
    const Vpa vpa = disj_machine();
    const auto peaks = collect_peaks(vpa, 12);
    std::atomic<std::uint64_t> violations{0}, factors{0};
#pragma omp parallel for schedule(dynamic, 512)
    for (std::size_t pi = 0; pi < peaks.size(); ++pi) {
        const auto& w = peaks[pi];
        if (w.empty()) continue;
        const auto letters = weighted_word_of(vpa, w);
        const auto rep = sliced_rep(vpa, w);
        const std::int64_t n = static_cast<std::int64_t>(w.size());
        for (std::uint64_t k : {std::uint64_t{1}, std::uint64_t{2}}) {
            if (4 * k > w.size()) continue; // the bound assumes 4k <= |u|
            // the deterministic observation set of the window sample at each start
            std::vector<std::vector<char>> covers(w.size(),
                                                  std::vector<char>(w.size(), 0));
            for (std::size_t i = 0; i < w.size(); ++i) {
                WkCell cell(k);
                cell.start(letters[i], vpa.symbol_class[w[i]]);
                for (std::size_t j = i + 1; j < w.size(); ++j)
                    cell.feed(letters[j], vpa.symbol_class[w[j]]);
                const SampleFragment f = cell.fragment();
                for (const auto& l : f.factor.letters) covers[i][l.position] = 1;
                for (const auto& l : f.pop_side.letters) covers[i][l.position] = 1;
            }
            // every k-factor of the sliced word, start by start
            for (std::size_t j = 0; j < rep.size(); ++j) {
                std::vector<std::uint64_t> under;
                std::uint64_t cum = 0;
                for (std::size_t l = j; l < rep.size() && cum < k; ++l) {
                    cum += rep[l].weight;
                    under.insert(under.end(), rep[l].positions.begin(),
                                 rep[l].positions.end());
                }
                ++factors;
                // exact probability that 4k independent window samples
                // jointly observe every underlying position, by
                // inclusion-exclusion over the positions
                Frac cover(0);
                for (std::size_t mask = 0; mask < (std::size_t{1} << under.size());
                     ++mask) {
                    std::int64_t missing = 0;
                    for (std::size_t i = 0; i < w.size(); ++i) {
                        bool hits = false;
                        for (std::size_t b = 0; b < under.size(); ++b)
                            if ((mask >> b & 1) && covers[i][under[b]]) hits = true;
                        if (!hits) ++missing;
                    }
                    const Frac term = Frac(missing, n).pow(4 * static_cast<unsigned>(k));
                    cover += (std::popcount(mask) % 2 ? Frac(0) - term : term);
                }
                if (cover < Frac(static_cast<std::int64_t>(rep[j].weight), n))
                    ++violations;
            }
        }
    }
    std::ostringstream d;
    d << peaks.size() << " peaks <=12, " << factors.load() << " factors, "
      << violations.load() << " domination violations";
    d << " (words shorter than 4k skipped)";
    return {6, "4k window samples dominate sliced k-factor sampling", violations == 0,
            d.str()};
}

// ---------------------------------------------------------------- criterion 7

Result c7_slicing_equivalence() {
    std::atomic<std::uint64_t> bad{0}, total{0};
    for (const Vpa& vpa : {disj_machine(), paren_machine(), four_state_machine()}) {
        const SlicingNfa nfa = build_slicing(vpa);
        const auto peaks = collect_peaks(vpa, 10);
        total += peaks.size();
#pragma omp parallel for schedule(dynamic, 256)
        for (std::size_t i = 0; i < peaks.size(); ++i)
            if (slicing_accepts(nfa, slice_peak(vpa, peaks[i])) !=
                accepts(vpa, peaks[i]))
                ++bad;
    }
    std::ostringstream d;
    d << total.load() << " peaks <=10 over three machines, " << bad.load()
      << " disagreements";
    return {7, "slicing automaton decides exactly the peak members", bad == 0, d.str()};
}

// ---------------------------------------------------------------- criterion 8

Result c8_members_accepted() {
    const Vpa vpa = disj_machine();
    const std::size_t trials = 10000;
    std::atomic<std::uint64_t> rejected{0};
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t i = 0; i < trials; ++i) {
        Xoshiro256 gen_rng(50000 + i);
        const std::uint64_t n = i == 0 ? 10000 : log_uniform(gen_rng, 4, 10000);
        const std::size_t j = 1 + gen_rng.below(n / 2);
        const auto w = gen_disj_member(vpa, n, j, gen_rng);
        TesterConfig cfg;
        cfg.n = n;
        cfg.seed = i;
        if (run_tester(vpa, w, cfg).verdict != "accept") ++rejected;
    }
    std::ostringstream d;
    d << trials << " member streams up to n=10000, " << rejected.load() << " rejected";
    return {8, "members are always accepted (one-sided error)", rejected == 0, d.str()};
}

// ---------------------------------------------------------------- criterion 9

Result c9_far_rejection() {
    const Vpa vpa = disj_machine();
    const std::size_t n = 256, j = 26; // bdist >= 2j = 52 > 0.2 * 256
    const auto w = gen_disj_far(vpa, n, j);
    const std::vector<std::uint64_t> sweep{16, 32, 64, 128};
    const std::size_t trials = 300;
    std::vector<double> rates;
    for (std::size_t si = 0; si < sweep.size(); ++si) {
        std::atomic<std::uint64_t> rejects{0};
#pragma omp parallel for schedule(dynamic, 8)
        for (std::size_t i = 0; i < trials; ++i) {
            TesterConfig cfg;
            cfg.n = n;
            cfg.seed = 90000 + si * trials + i;
            cfg.epsilon = 0.2;
            cfg.eta = 1.0 / 3.0;
            cfg.T_override = sweep[si];
            if (run_tester(vpa, w, cfg).verdict == "reject") ++rejects;
        }
        rates.push_back(static_cast<double>(rejects.load()) / trials);
    }
    bool monotone = true;
    for (std::size_t i = 1; i < rates.size(); ++i)
        if (rates[i] + 0.05 < rates[i - 1]) monotone = false;
    const bool pass = monotone && rates.back() >= 2.0 / 3.0;
    std::ostringstream d;
    d << "rejection rate over " << trials << " trials, T swept:";
    for (std::size_t i = 0; i < sweep.size(); ++i)
        d << " T=" << sweep[i] << ":" << rates[i];
    return {9, "far instances are rejected with rate >= 2/3", pass, d.str()};
}

// --------------------------------------------------------------- criterion 10

Result c10_memory_fit() {
    ExperimentConfig cfg;
    cfg.generator = "random-balanced";
    for (int e = 10; e <= 20; ++e) cfg.n_values.push_back(std::uint64_t{1} << e);
    cfg.trials = 3;
    cfg.base_seed = 424242;
    const ExperimentReport rep = run_experiment(cfg);
    std::ostringstream d;
    d << "stored-items peak ~ c*log^p n over n=2^10..2^20: c=" << rep.fit.c
      << " p=" << rep.fit.p;
    return {10, "memory grows polylogarithmically (fit exponent <= 6)",
            rep.fit.ok && rep.fit.p <= 6.0, d.str()};
}

// --------------------------------------------------------------- criterion 11

Result c11_distance_oracles() {
    const Vpa vpa = disj_machine();
    std::atomic<std::uint64_t> dp_bad{0}, slice_bad{0};

    const auto words = collect_balanced(vpa, 8);
    std::vector<std::vector<WeightedLetter>> lifted(words.size());
    for (std::size_t i = 0; i < words.size(); ++i)
        lifted[i] = weighted_word_of(vpa, words[i]);
#pragma omp parallel for schedule(dynamic, 32)
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j) {
            if (words[i].size() + words[j].size() > 10) continue;
            if (bdist(vpa, lifted[i], lifted[j]) !=
                bdist_bruteforce(vpa, lifted[i], lifted[j]))
                ++dp_bad;
        }

    const auto peaks = collect_peaks(vpa, 8);
    std::vector<std::vector<WeightedLetter>> plift(peaks.size());
    std::vector<std::vector<SlicedLetter>> psliced(peaks.size());
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        plift[i] = weighted_word_of(vpa, peaks[i]);
        psliced[i] = slice_peak(vpa, peaks[i]);
    }
#pragma omp parallel for schedule(dynamic, 8)
    for (std::size_t i = 0; i < peaks.size(); ++i)
        for (std::size_t j = 0; j < peaks.size(); ++j)
            if (bdist(vpa, plift[i], plift[j]) > 2 * sliced_dist(psliced[i], psliced[j]))
                ++slice_bad;

    std::ostringstream d;
    d << words.size() << " words (pairs <=10): " << dp_bad.load()
      << " DP/brute mismatches; " << peaks.size() << " peaks <=8: "
      << slice_bad.load() << " sliced-bound violations";
    return {11, "distance DP matches brute force; bdist <= 2*sliced_dist",
            dp_bad == 0 && slice_bad == 0, d.str()};
}

// --------------------------------------------------------------- criterion 12

std::string random_machine_text(Xoshiro256& rng) {
    const std::size_t m = 1 + rng.below(4);
    std::ostringstream s;
    s << "states " << m << "\n";
    s << "initial";
    bool any = false;
    for (std::size_t q = 0; q < m; ++q)
        if (rng.below(2)) {
            s << " " << q;
            any = true;
        }
    if (!any) s << " 0";
    s << "\nfinal";
    any = false;
    for (std::size_t q = 0; q < m; ++q)
        if (rng.below(2)) {
            s << " " << q;
            any = true;
        }
    if (!any) s << " " << rng.below(m);
    s << "\nstack g h\n";
    s << "neutral a 0 0\n"; // at least one symbol
    for (const char* c : {"a", "b"})
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = 0; q < m; ++q)
                if (rng.below(4) == 0) s << "neutral " << c << " " << p << " " << q << "\n";
    for (const char* c : {"c", "d"})
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = 0; q < m; ++q)
                for (const char* g : {"g", "h"})
                    if (rng.below(4) == 0)
                        s << "push " << c << " " << p << " " << q << " " << g << "\n";
    for (const char* c : {"r", "s"})
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = 0; q < m; ++q)
                for (const char* g : {"g", "h"})
                    if (rng.below(4) == 0)
                        s << "pop " << c << " " << p << " " << g << " " << q << "\n";
    return s.str();
}

Result c12_diameters() {
    Xoshiro256 rng(2718);
    std::uint64_t bad_sigma = 0, bad_slicing = 0;
    for (int i = 0; i < 50; ++i) {
        const Vpa vpa = parse_vpa(random_machine_text(rng));
        const std::uint64_t mm = vpa.m * vpa.m;
        if (vpa.sigma_diameter() > (std::uint64_t{1} << mm)) ++bad_sigma;
        if (build_slicing(vpa).diameter > 2 * mm) ++bad_slicing;
    }
    std::ostringstream d;
    d << "50 random machines m<=4: " << bad_sigma << " sigma-diameter and "
      << bad_slicing << " slicing-diameter violations";
    return {12, "diameters within 2^(m^2) and 2m^2", bad_sigma == 0 && bad_slicing == 0,
            d.str()};
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    const auto want = [&](int id) { return wanted.empty() || wanted.count(id); };

    std::vector<Result> results;
    const auto timed = [&](int id, auto fn) {
        if (!want(id)) return;
        const auto t0 = std::chrono::steady_clock::now();
        Result r = fn();
        const double s = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        r.detail += " [" + std::to_string(s).substr(0, 6) + "s]";
        results.push_back(std::move(r));
    };

    timed(1, c1_exactness);
    if (want(2) || want(3)) {
        const auto t0 = std::chrono::steady_clock::now();
        auto [r2, r3] = c2_c3_stack_and_depth();
        const double s = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        r2.detail += " [" + std::to_string(s).substr(0, 6) + "s]";
        if (want(2)) results.push_back(std::move(r2));
        if (want(3)) results.push_back(std::move(r3));
    }
    timed(4, c4_decomposition_size);
    timed(5, c5_sampler_distributions);
    timed(6, c6_over_sampling);
    timed(7, c7_slicing_equivalence);
    timed(8, c8_members_accepted);
    timed(9, c9_far_rejection);
    timed(10, c10_memory_fit);
    timed(11, c11_distance_oracles);
    timed(12, c12_diameters);

    bool all = true;
    for (const auto& r : results) {
        std::printf("criterion %2d %-55s %s  (%s)\n", r.id, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
