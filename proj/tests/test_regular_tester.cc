#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hh"
#include "vplt/generators.hh"
#include "vplt/oracle.hh"
#include "vplt/sampling.hh"
#include "vplt/tester.hh"

using namespace vplt;
using vplt::testing::for_each_peak;

namespace {

std::vector<SampleFragment> sample_fragments(const Vpa& vpa, const std::vector<int>& word,
                                             const std::vector<std::size_t>& starts,
                                             std::uint64_t k) {
    const auto letters = weighted_word_of(vpa, word);
    std::vector<SampleFragment> out;
    for (std::size_t i : starts) {
        WkCell cell(k);
        cell.start(letters[i], vpa.symbol_class[word[i]]);
        for (std::size_t j = i + 1; j < letters.size(); ++j)
            cell.feed(letters[j], vpa.symbol_class[word[j]]);
        out.push_back(cell.fragment());
    }
    return out;
}

} // namespace

TEST_CASE("slicing acceptance equals word acceptance on every short peak") {
    for (const Vpa& vpa : {disj_machine(), paren_machine(), four_state_machine()}) {
        const SlicingNfa nfa = build_slicing(vpa);
        for_each_peak(vpa, 8, [&](const std::vector<int>& w) {
            CHECK(slicing_accepts(nfa, slice_peak(vpa, w)) == accepts(vpa, w));
        });
    }
}

TEST_CASE("slice_peak rejects words that are not peaks") {
    const Vpa vpa = disj_machine();
    const int p = vpa.symbol_id("0"), q = vpa.symbol_id("0~");
    CHECK_THROWS_AS(slice_peak(vpa, {p, q, p, q}), std::invalid_argument);
    CHECK_THROWS_AS(slice_peak(vpa, {p}), std::invalid_argument);
    CHECK_THROWS_AS(slice_peak(vpa, {q}), std::invalid_argument);
}

TEST_CASE("the whole-word fragment relation decides acceptance") {
    for (const Vpa& vpa : {disj_machine(), four_state_machine()}) {
        const SlicingNfa nfa = build_slicing(vpa);
        for_each_peak(vpa, 6, [&](const std::vector<int>& w) {
            const BitMatrix r = fragment_relation(nfa, slice_peak(vpa, w));
            bool ok = false;
            for (std::size_t i = 0; i < nfa.nstates && !ok; ++i)
                for (std::size_t j = 0; j < nfa.nstates && !ok; ++j)
                    if (nfa.initial[i] && nfa.finals[j] && r.get(i, j)) ok = true;
            CHECK(ok == accepts(vpa, w));
        });
    }
}

TEST_CASE("the approximated relation contains the exact one") {
    for (const Vpa& vpa : {disj_machine(), four_state_machine()}) {
        const SlicingNfa nfa = build_slicing(vpa);
        for_each_peak(vpa, 6, [&](const std::vector<int>& w) {
            if (w.empty()) return;
            const Relation exact = relation_of_balanced(vpa, w);
            // no observations at all: everything rides on the gap closure
            CHECK(exact.is_subset_of(approximate_relation(vpa, nfa, {})));
            for (std::uint64_t k : {std::uint64_t{1}, std::uint64_t{2}}) {
                // a single fragment per start position, then all combined
                std::vector<std::size_t> all(w.size());
                for (std::size_t i = 0; i < w.size(); ++i) all[i] = i;
                for (std::size_t i = 0; i < w.size(); ++i) {
                    const Relation approx =
                        approximate_relation(vpa, nfa, sample_fragments(vpa, w, {i}, k));
                    CHECK(exact.is_subset_of(approx));
                }
                const Relation full =
                    approximate_relation(vpa, nfa, sample_fragments(vpa, w, all, k));
                CHECK(exact.is_subset_of(full));
            }
        });
    }
}

TEST_CASE("full observation of a rejected peak is itself rejected") {
    // the far instance's relation must not survive total information
    const Vpa vpa = disj_machine();
    const SlicingNfa nfa = build_slicing(vpa);
    const auto w = gen_disj_far(vpa, 10, 3);
    REQUIRE(!accepts(vpa, w));
    const auto frags =
        sample_fragments(vpa, w, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, /*k=*/10);
    const Relation approx = approximate_relation(vpa, nfa, frags);
    CHECK(!vpa.relation_accepts(approx));
}

TEST_CASE("disagreeing exact observations raise a conflict") {
    const Vpa vpa = disj_machine();
    const SlicingNfa nfa = build_slicing(vpa);
    const int a = vpa.symbol_id("a"), p = vpa.symbol_id("0"), q = vpa.symbol_id("0~");

    auto frags = sample_fragments(vpa, {p, a, q}, {0}, 3);
    auto bad = sample_fragments(vpa, {p, a, q}, {0}, 3);
    bad[0].factor.letters[1].symbol = vpa.symbol_id("a"); // same so far
    CHECK_NOTHROW(approximate_relation(vpa, nfa, {frags[0], bad[0]}));
    bad[0].factor.letters[1].height += 1; // now the observations clash
    CHECK_THROWS_AS(approximate_relation(vpa, nfa, {frags[0], bad[0]}),
                    FragmentConflict);
}

TEST_CASE("colliding estimated letters are dropped, not fatal") {
    const Vpa vpa = disj_machine();
    const SlicingNfa nfa = build_slicing(vpa);
    const int a = vpa.symbol_id("a"), p = vpa.symbol_id("0"), q = vpa.symbol_id("0~");
    const std::vector<int> w{p, a, q};
    const Relation exact = relation_of_balanced(vpa, w);

    auto frags = sample_fragments(vpa, w, {1}, 1);
    SampleFragment ghost = frags[0];
    REQUIRE(ghost.factor.size() == 1);
    ghost.factor.letters[0].estimated = true;
    ghost.factor.letters[0].rel =
        std::make_shared<const Relation>(Relation::identity(vpa.m));
    ghost.factor.letters[0].symbol = -1;
    SampleFragment ghost2 = ghost;
    ghost2.factor.letters[0].weight = 2; // distinct estimate, same slot
    const Relation approx = approximate_relation(vpa, nfa, {ghost, ghost2});
    CHECK(exact.is_subset_of(approx)); // both dropped; gap closure covers the word
}

TEST_CASE("slicing diameter is at most 2 m^2") {
    for (const Vpa& vpa : {disj_machine(), paren_machine(), four_state_machine()}) {
        const SlicingNfa nfa = build_slicing(vpa);
        CHECK(nfa.diameter <= 2 * vpa.m * vpa.m);
    }
}

TEST_CASE("sample-count parameters follow their formulas") {
    const ApproxParams p = ApproxParams::derive(3, 18, 0.5, 0.25);
    CHECK(p.k == 432);          // ceil(4 * 18 * 3 / 0.5)
    CHECK(p.t == 2 * 7776);     // 2 * ceil(4 * 18 * 27 * log2(4) / 0.5)
    CHECK(p.T == 4 * p.k * p.t);
    const ApproxParams pk = ApproxParams::derive(3, 18, 0.5, 0.25, true);
    CHECK(pk.t == 4 * 7776);
}
