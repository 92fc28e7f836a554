#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "vplt/exact.hh"
#include "vplt/experiment.hh"
#include "vplt/generators.hh"
#include "vplt/oracle.hh"

using namespace vplt;

TEST_CASE("member generation produces accepted words of the requested shape") {
    const Vpa vpa = disj_machine();
    Xoshiro256 rng(1);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t j = 1 + rng.below(20);
        const std::size_t n = 2 * j + rng.below(50);
        const auto w = gen_disj_member(vpa, n, j, rng);
        REQUIRE(w.size() == n);
        std::size_t pushes = 0;
        for (int s : w) pushes += vpa.is_push(s) ? 1 : 0;
        CHECK(pushes == j);
        CHECK(run_exact(vpa, w).accepted);
    }
    CHECK_THROWS_AS(gen_disj_member(vpa, 3, 2, rng), std::invalid_argument);
}

TEST_CASE("far generation produces rejected words that are truly far") {
    const Vpa vpa = disj_machine();
    for (std::size_t j : {1u, 2u, 4u}) {
        const std::size_t n = 2 * j + 3;
        const auto w = gen_disj_far(vpa, n, j);
        REQUIRE(w.size() == n);
        CHECK(!run_exact(vpa, w).accepted);
    }
    // certified by the language-distance oracle on a small instance
    const auto d = bdist_to_language(vpa, gen_disj_far(vpa, 6, 2), 8);
    REQUIRE(d.has_value());
    CHECK(*d >= 4);
    CHECK_THROWS_AS(gen_disj_far(vpa, 3, 2), std::invalid_argument);
}

TEST_CASE("random balanced words are balanced with the exact length") {
    const Vpa vpa = disj_machine();
    Xoshiro256 rng(2);
    for (std::size_t n : {1u, 2u, 7u, 100u, 1001u}) {
        const auto w = gen_random_balanced(vpa, n, rng);
        REQUIRE(w.size() == n);
        CHECK(check_balanced(vpa, w));
    }
}

TEST_CASE("member sampling hits exact lengths and only real members") {
    for (const Vpa& vpa : {disj_machine(), paren_machine(), four_state_machine()}) {
        const MemberSampler sampler(vpa, 24);
        Xoshiro256 rng(3);
        for (std::size_t n = 0; n <= 24; ++n) {
            if (!sampler.has_member(n)) {
                CHECK_THROWS_AS(sampler.sample(n, rng), std::invalid_argument);
                continue;
            }
            for (int trial = 0; trial < 5; ++trial) {
                const auto w = sampler.sample(n, rng);
                REQUIRE(w.size() == n);
                CHECK(run_exact(vpa, w).accepted);
            }
        }
    }
    // nonempty parens have no member of length 1 (or any odd length)
    const Vpa paren = paren_machine(); // the sampler keeps a reference
    const MemberSampler parens(paren, 9);
    CHECK(!parens.has_member(1));
    CHECK(!parens.has_member(7));
    CHECK(parens.has_member(8));
}

TEST_CASE("experiment config validation") {
    nlohmann::json base = {{"generator", "disj-member"},
                           {"n", {64, 128}},
                           {"trials", 3},
                           {"seed", 5}};
    const ExperimentConfig cfg = ExperimentConfig::from_json(base);
    CHECK(cfg.generator == "disj-member");
    CHECK(cfg.n_values == std::vector<std::uint64_t>{64, 128});
    CHECK(cfg.trials == 3);
    CHECK(cfg.base_seed == 5);

    nlohmann::json bad = base;
    bad["trials"] = 0;
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad), std::invalid_argument);
    bad = base;
    bad["n"] = {128, 64}; // must ascend
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad), std::invalid_argument);
    bad = base;
    bad["generator"] = "nonsense";
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad), std::invalid_argument);
    bad = base;
    bad["profile"] = "nonsense";
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad), std::invalid_argument);
}

TEST_CASE("experiment runs are reproducible and correctly tabulated") {
    ExperimentConfig cfg;
    cfg.generator = "disj-member";
    cfg.j_frac = 0.25;
    cfg.n_values = {64, 128, 256};
    cfg.trials = 4;
    cfg.base_seed = 11;

    const ExperimentReport a = run_experiment(cfg);
    REQUIRE(a.trials.size() == 12);
    for (const auto& t : a.trials) CHECK(t.verdict == "accept");
    for (const auto& [n, rate] : a.accept_rate) CHECK(rate == 1.0);

    // seeds are global trial indices offset by the base seed
    for (std::size_t i = 0; i < a.trials.size(); ++i)
        CHECK(a.trials[i].seed == 11 + i);

    const ExperimentReport b = run_experiment(cfg);
    REQUIRE(b.trials.size() == a.trials.size());
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        CHECK(a.trials[i].verdict == b.trials[i].verdict);
        CHECK(a.trials[i].stored_peak == b.trials[i].stored_peak);
    }

    // frozen CSV schema
    std::istringstream csv(a.to_csv());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "n,seed,verdict,stored_peak,stack_max,t,k,T,ms");
    std::size_t rows = 0;
    for (std::string line; std::getline(csv, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == a.trials.size());

    const nlohmann::json j = a.to_json(cfg);
    CHECK(j.contains("config"));
    CHECK(j.contains("trials"));
    CHECK(j.contains("accept_rate"));
}

TEST_CASE("far experiments are rejected by the exact recognizer") {
    ExperimentConfig cfg;
    cfg.generator = "disj-far";
    cfg.j_frac = 0.2;
    cfg.n_values = {64, 128};
    cfg.trials = 2;
    cfg.exact_mode = true;
    const ExperimentReport rep = run_experiment(cfg);
    for (const auto& t : rep.trials) CHECK(t.verdict == "reject");
}

TEST_CASE("the memory fit reports a small exponent on member streams") {
    ExperimentConfig cfg;
    cfg.generator = "random-balanced";
    cfg.n_values = {1 << 8, 1 << 10, 1 << 12};
    cfg.trials = 3;
    cfg.base_seed = 21;
    const ExperimentReport rep = run_experiment(cfg);
    REQUIRE(rep.fit.ok);
    CHECK(rep.fit.c > 0);
    CHECK(rep.fit.p < 8); // generous; the acceptance run pins the real bound
}
