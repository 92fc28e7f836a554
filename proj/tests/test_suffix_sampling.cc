#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/multiprecision/cpp_int.hpp>

#include "vplt/generators.hh"
#include "vplt/oracle.hh"
#include "vplt/suffix_sampling.hh"

using namespace vplt;

namespace {

// 1 + 2 * (least s with (num/den)^s >= u), the decomposition size bound
std::size_t size_bound(std::uint64_t u, std::uint64_t num, std::uint64_t den) {
    boost::multiprecision::cpp_int a = 1, b = u;
    std::size_t s = 0;
    while (a < b) {
        a *= num;
        b *= den;
        ++s;
    }
    return 1 + 2 * s;
}

WeightedLetter unit(std::uint64_t pos, std::uint64_t w = 1) {
    WeightedLetter l;
    l.symbol = 0;
    l.position = pos;
    l.weight = w;
    return l;
}

using Sampling = SuffixSampling<LetterSampler>;

Sampling make(std::uint64_t num, std::uint64_t den, std::size_t t = 1) {
    return Sampling(num, den, t);
}

} // namespace

TEST_CASE("decomposition stays within the size bound at every step") {
    Xoshiro256 rng(11);
    for (auto [num, den] : {std::pair<std::uint64_t, std::uint64_t>{2, 1}, {3, 2}, {9, 8}}) {
        Sampling d = make(num, den);
        std::uint64_t total = 0;
        for (std::uint64_t i = 0; i < 3000; ++i) {
            d.append_letter(unit(i), SymClass::Neutral, rng, [] { return LetterSampler(); });
            d.simplify();
            total += 1;
            REQUIRE(d.valid_decomposition());
            REQUIRE(d.size() <= size_bound(total, num, den));
        }
        CHECK(d.entries.front().weight_low == total);
        CHECK(d.entries.front().weight_high == total);
        CHECK(d.entries.back().weight_low == 1); // the last letter is always a suffix
    }
}

TEST_CASE("heavier letters count with their weight") {
    Xoshiro256 rng(3);
    Sampling d = make(2, 1);
    std::uint64_t total = 0, pos = 0;
    for (int i = 0; i < 400; ++i) {
        const std::uint64_t w = 1 + rng.below(50);
        d.append_letter(unit(pos, w), SymClass::Neutral, rng, [] { return LetterSampler(); });
        d.simplify();
        pos += w;
        total += w;
        REQUIRE(d.valid_decomposition());
        REQUIRE(d.size() <= size_bound(total, 2, 1));
        REQUIRE(d.entries.front().weight_low == total);
    }
}

TEST_CASE("push and pop counters track each suffix independently") {
    Xoshiro256 rng(5);
    Sampling d = make(2, 1);
    const SymClass seq[] = {SymClass::Push, SymClass::Push, SymClass::Pop,
                            SymClass::Pop,  SymClass::Pop,  SymClass::Push};
    for (std::size_t i = 0; i < 6; ++i)
        d.append_letter(unit(i), seq[i], rng, [] { return LetterSampler(); });
    // whole word: 3 pushes, 3 pops, one pop arriving unmatched
    CHECK(d.entries.front().unmatched_pushes == 1);
    CHECK(d.entries.front().unmatched_pops == 1);
    // the single-letter suffix is just the final push
    CHECK(d.entries.back().unmatched_pushes == 1);
    CHECK(d.entries.back().unmatched_pops == 0);
}

TEST_CASE("per-suffix sampler is weight-proportional over the whole word") {
    const auto dist = enumerate_outcomes([](RandomSource& rng) {
        Sampling d = make(2, 1);
        const std::uint64_t ws[3] = {1, 2, 1};
        std::uint64_t pos = 0;
        for (int i = 0; i < 3; ++i) {
            WeightedLetter l = unit(pos, ws[i]);
            l.symbol = i;
            d.append_letter(l, SymClass::Neutral, rng, [] { return LetterSampler(); });
            d.simplify();
            pos += ws[i];
        }
        return std::to_string(d.entries.front().samples[0].letter().symbol);
    });
    REQUIRE(dist.size() == 3);
    CHECK(dist.at("0") == Frac(1, 4));
    CHECK(dist.at("1") == Frac(1, 2));
    CHECK(dist.at("2") == Frac(1, 4));
}

TEST_CASE("concatenation merges weights, counters, and the suffix lists") {
    Xoshiro256 rng(8);
    Sampling d1 = make(2, 1);
    d1.append_letter(unit(0), SymClass::Push, rng, [] { return LetterSampler(); });
    d1.append_letter(unit(1), SymClass::Push, rng, [] { return LetterSampler(); });

    Sampling d2 = make(2, 1);
    d2.append_letter(unit(2), SymClass::Pop, rng, [] { return LetterSampler(); });
    d2.append_letter(unit(3), SymClass::Neutral, rng, [] { return LetterSampler(); });

    const std::size_t before = d1.size();
    d1.concatenate_word(std::move(d2), /*weight=*/2, /*pushes=*/0, /*pops=*/1, rng);
    CHECK(d1.size() == before + 2);
    CHECK(d1.entries.front().weight_low == 4);
    CHECK(d1.entries.front().unmatched_pushes == 1); // one push consumed by the pop
    CHECK(d1.entries.front().unmatched_pops == 0);
    CHECK(d1.entries[before - 1].diff_next_is_one); // old last letter borders the join
    CHECK(d1.valid_decomposition());
}

TEST_CASE("concatenation keeps samples weight-proportional") {
    const auto dist = enumerate_outcomes([](RandomSource& rng) {
        Sampling d1 = make(2, 1);
        for (int i = 0; i < 2; ++i) {
            WeightedLetter l = unit(static_cast<std::uint64_t>(i));
            l.symbol = i;
            d1.append_letter(l, SymClass::Neutral, rng, [] { return LetterSampler(); });
        }
        Sampling d2 = make(2, 1);
        WeightedLetter c = unit(2, 2);
        c.symbol = 9;
        d2.append_letter(c, SymClass::Neutral, rng, [] { return LetterSampler(); });
        d1.concatenate_word(std::move(d2), 2, 0, 0, rng);
        return std::to_string(d1.entries.front().samples[0].letter().symbol);
    });
    REQUIRE(dist.size() == 3);
    CHECK(dist.at("0") == Frac(1, 4));
    CHECK(dist.at("1") == Frac(1, 4));
    CHECK(dist.at("9") == Frac(1, 2));
}

TEST_CASE("alpha must exceed one") {
    CHECK_THROWS_AS(make(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(make(3, 4), std::invalid_argument);
}
