#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hh"
#include "vplt/exact.hh"
#include "vplt/generators.hh"
#include "vplt/oracle.hh"

using namespace vplt;
using vplt::testing::for_each_balanced;
using vplt::testing::for_each_word;

TEST_CASE("verdicts match configuration-set simulation on every short word") {
    for (const Vpa& vpa : {disj_machine(), paren_machine(), four_state_machine()}) {
        const std::size_t max_len = vpa.num_symbols() >= 5 ? 6 : 8;
        for_each_word(
            vpa, max_len,
            [&](const std::vector<int>& w) {
                const ExactResult res = run_exact(vpa, w);
                CHECK(res.accepted == oracle_accepts(vpa, w));
                CHECK(res.stats.balanced == check_balanced(vpa, w));
            },
            /*balanced_only=*/false);
    }
}

TEST_CASE("unbalanced inputs are reported as such, not merely rejected") {
    const Vpa vpa = paren_machine();
    const int open = vpa.symbol_id("("), close = vpa.symbol_id(")");

    const ExactResult dangling = run_exact(vpa, {open, open, close});
    CHECK(!dangling.accepted);
    CHECK(dangling.reason == "unbalanced");

    const ExactResult underflow = run_exact(vpa, {open, close, close, open});
    CHECK(!underflow.accepted);
    CHECK(underflow.reason == "unbalanced");

    // once dead, feed reports failure and the verdict stays unbalanced
    ExactRecognizer rec(vpa);
    CHECK(rec.feed(open));
    CHECK(rec.feed(close));
    CHECK(!rec.feed(close));
    CHECK(!rec.feed(open));
    CHECK(rec.finish().reason == "unbalanced");
}

TEST_CASE("stack, depth, and compression ratio stay logarithmic on random input") {
    const Vpa vpa = disj_machine();
    Xoshiro256 rng(2024);
    for (std::size_t n : {64u, 512u, 4096u}) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto w = gen_random_balanced(vpa, n, rng);
            const ExactResult res = run_exact(vpa, w);
            REQUIRE(res.stats.balanced);
            const double lg = std::log2(static_cast<double>(n));
            CHECK(res.stats.max_stack <= static_cast<std::size_t>(std::ceil(lg)));
            CHECK(res.stats.max_depth <= std::log(static_cast<double>(n)) / std::log(1.5));
            CHECK(res.stats.compress_bound_ok);
            CHECK(res.stats.n == n);
        }
    }
}

TEST_CASE("balanced prefixes collapse instead of accumulating") {
    const Vpa vpa = paren_machine();
    const int p = vpa.symbol_id("("), q = vpa.symbol_id(")");
    std::vector<int> w;
    for (int i = 0; i < 5000; ++i) {
        w.push_back(p);
        w.push_back(q);
    }
    const ExactResult res = run_exact(vpa, w);
    CHECK(res.accepted);
    CHECK(res.stats.max_letters <= 4); // each sibling peak folds into r_temp
}

TEST_CASE("relation_of_weighted agrees with the balanced-word relation") {
    const Vpa vpa = four_state_machine();
    for_each_balanced(vpa, 6, [&](const std::vector<int>& w) {
        if (w.empty()) return;
        const auto letters = weighted_word_of(vpa, w);
        CHECK(relation_of_weighted(vpa, letters, 0, letters.size()) ==
              relation_of_balanced(vpa, w));
    });
}

TEST_CASE("relation_of_weighted rejects unbalanced factors") {
    const Vpa vpa = paren_machine();
    const auto pair = weighted_word_of(vpa, {vpa.symbol_id("("), vpa.symbol_id(")")});
    CHECK_THROWS_AS(relation_of_weighted(vpa, pair, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(relation_of_weighted(vpa, pair, 1, 2), std::invalid_argument);
}

TEST_CASE("members and the far family get the expected verdicts") {
    const Vpa vpa = disj_machine();
    Xoshiro256 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 10 + 2 * static_cast<std::size_t>(rng.below(200));
        const std::size_t j = 1 + static_cast<std::size_t>(rng.below(n / 2));
        CHECK(run_exact(vpa, gen_disj_member(vpa, n, j, rng)).accepted);
        const ExactResult far = run_exact(vpa, gen_disj_far(vpa, n, j));
        CHECK(!far.accepted);
        CHECK(far.reason == "rejected"); // balanced but not a member
    }
}
