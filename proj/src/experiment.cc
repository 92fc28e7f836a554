/* experiment.cc -- trial loop, aggregation, memory-growth fit */

#include "vplt/experiment.hh"

#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vplt/generators.hh"

namespace vplt {

namespace {

Profile profile_from_string(const std::string& s) {
    if (s == "theorem") return Profile::Theorem;
    if (s == "desk") return Profile::Desk;
    if (s == "peak") return Profile::Peak;
    throw std::invalid_argument("unknown profile: " + s);
}

std::string profile_to_string(Profile p) {
    switch (p) {
    case Profile::Theorem: return "theorem";
    case Profile::Peak: return "peak";
    default: return "desk";
    }
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    cfg.vpa_file = j.value("vpa", "");
    cfg.generator = j.at("generator").get<std::string>();
    cfg.j = j.value("j", std::size_t{0});
    if (j.contains("j_frac")) cfg.j_frac = j.at("j_frac").get<double>();
    cfg.n_values = j.at("n").get<std::vector<std::uint64_t>>();
    cfg.epsilon = j.value("epsilon", 0.1);
    cfg.eta = j.value("eta", 1.0 / 3.0);
    cfg.trials = j.value("trials", std::size_t{1});
    cfg.base_seed = j.value("seed", std::uint64_t{0});
    cfg.profile = profile_from_string(j.value("profile", "desk"));
    if (j.contains("T")) cfg.T_override = j.at("T").get<std::uint64_t>();
    if (j.contains("k")) cfg.k_override = j.at("k").get<std::uint64_t>();
    cfg.exact_mode = j.value("exact_mode", false);
    cfg.workers = j.value("workers", 0);
    cfg.csv_path = j.value("csv", "");
    cfg.json_path = j.value("json", "");

    if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (cfg.generator != "disj-member" && cfg.generator != "disj-far" &&
        cfg.generator != "random-member" && cfg.generator != "random-balanced")
        throw std::invalid_argument("config: unknown generator " + cfg.generator);
    for (std::size_t i = 1; i < cfg.n_values.size(); ++i)
        if (cfg.n_values[i] < cfg.n_values[i - 1])
            throw std::invalid_argument("config: n values must be ascending");
    return cfg;
}

namespace {

std::size_t pairs_for(const ExperimentConfig& cfg, std::uint64_t n) {
    if (cfg.j_frac)
        return static_cast<std::size_t>(
            std::ceil(*cfg.j_frac * static_cast<double>(n)));
    return cfg.j > 0 ? cfg.j : 1;
}

std::vector<int> make_input(const ExperimentConfig& cfg, const Vpa& vpa,
                            const MemberSampler* members, std::uint64_t n,
                            std::uint64_t seed) {
    Xoshiro256 rng(seed);
    if (cfg.generator == "disj-member")
        return gen_disj_member(vpa, n, pairs_for(cfg, n), rng);
    if (cfg.generator == "disj-far")
        return gen_disj_far(vpa, n, pairs_for(cfg, n));
    if (cfg.generator == "random-balanced")
        return gen_random_balanced(vpa, n, rng);
    if (cfg.generator == "random-member") {
        if (!members) throw std::logic_error("member sampler missing");
        return members->sample(n, rng);
    }
    throw std::invalid_argument("unknown generator: " + cfg.generator);
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    const Vpa vpa = cfg.vpa_file.empty() ? disj_machine() : [&] {
        std::ifstream in(cfg.vpa_file);
        if (!in) throw std::invalid_argument("cannot open " + cfg.vpa_file);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_vpa(ss.str());
    }();

    std::unique_ptr<MemberSampler> members;
    if (cfg.generator == "random-member")
        members = std::make_unique<MemberSampler>(vpa, cfg.n_values.back());

    struct Cell {
        std::uint64_t n, seed;
    };
    std::vector<Cell> cells;
    std::uint64_t seed = cfg.base_seed;
    for (std::uint64_t n : cfg.n_values)
        for (std::size_t t = 0; t < cfg.trials; ++t) cells.push_back({n, seed++});

    ExperimentReport report;
    report.trials.resize(cells.size());
    std::string failure;

#ifdef _OPENMP
    if (cfg.workers > 0) omp_set_num_threads(cfg.workers);
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cells.size()); ++i) {
        const Cell& cell = cells[static_cast<std::size_t>(i)];
        try {
            const std::vector<int> word =
                make_input(cfg, vpa, members.get(), cell.n, cell.seed);
            TesterConfig tc;
            tc.epsilon = cfg.epsilon;
            tc.eta = cfg.eta;
            tc.n = cell.n;
            tc.seed = cell.seed;
            tc.profile = cfg.profile;
            tc.T_override = cfg.T_override;
            tc.k_override = cfg.k_override;
            tc.exact_mode = cfg.exact_mode;

            const auto t0 = std::chrono::steady_clock::now();
            const TesterReport tr = run_tester(vpa, word, tc);
            const auto t1 = std::chrono::steady_clock::now();

            TrialResult& out = report.trials[static_cast<std::size_t>(i)];
            out.n = cell.n;
            out.seed = cell.seed;
            out.verdict = tr.verdict;
            out.stored_peak = tr.stored_items_peak;
            out.stack_max = tr.max_stack;
            out.t = tr.params.t;
            out.k = tr.params.k;
            out.T = tr.params.T;
            out.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (failure.empty())
                failure = "trial " + std::to_string(i) + " (n=" +
                          std::to_string(cell.n) + ", seed=" +
                          std::to_string(cell.seed) + "): " + e.what();
        }
    }
    if (!failure.empty()) throw std::runtime_error(failure);

    std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> counts; // n -> (accepts, total)
    std::map<std::uint64_t, double> peak_mean;
    for (const auto& tr : report.trials) {
        auto& [acc, tot] = counts[tr.n];
        if (tr.verdict == "accept") ++acc;
        ++tot;
        peak_mean[tr.n] += static_cast<double>(tr.stored_peak);
    }
    for (auto& [n, ct] : counts) {
        report.accept_rate[n] = static_cast<double>(ct.first) / ct.second;
        peak_mean[n] /= static_cast<double>(ct.second);
    }

    // least squares on log(peak) = log c + p * log(log2 n)
    if (peak_mean.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t cnt = 0;
        for (const auto& [n, peak] : peak_mean) {
            if (n < 4 || peak <= 0) continue;
            const double x = std::log(std::log2(static_cast<double>(n)));
            const double y = std::log(peak);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++cnt;
        }
        if (cnt >= 2 && sxx * cnt - sx * sx > 1e-12) {
            report.fit.p = (sxy * cnt - sx * sy) / (sxx * cnt - sx * sx);
            report.fit.c = std::exp((sy - report.fit.p * sx) / cnt);
            report.fit.ok = true;
        }
    }

    if (!cfg.csv_path.empty()) {
        std::ofstream out(cfg.csv_path);
        out << report.to_csv();
    }
    if (!cfg.json_path.empty()) {
        std::ofstream out(cfg.json_path);
        out << report.to_json(cfg).dump(2) << "\n";
    }
    return report;
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream out;
    out << "n,seed,verdict,stored_peak,stack_max,t,k,T,ms\n";
    for (const auto& tr : trials)
        out << tr.n << "," << tr.seed << "," << tr.verdict << "," << tr.stored_peak
            << "," << tr.stack_max << "," << tr.t << "," << tr.k << "," << tr.T
            << "," << tr.ms << "\n";
    return out.str();
}

nlohmann::json ExperimentReport::to_json(const ExperimentConfig& cfg) const {
    nlohmann::json j;
    j["config"] = {{"generator", cfg.generator},
                   {"epsilon", cfg.epsilon},
                   {"eta", cfg.eta},
                   {"trials", cfg.trials},
                   {"seed", cfg.base_seed},
                   {"profile", profile_to_string(cfg.profile)},
                   {"exact_mode", cfg.exact_mode},
                   {"n", cfg.n_values}};
    if (cfg.T_override) j["config"]["T"] = *cfg.T_override;
    if (cfg.k_override) j["config"]["k"] = *cfg.k_override;
    if (cfg.generator == "disj-far")
        j["config"]["far_certificate"] =
            "every matched pair is (1,1~); no member contains one, so each "
            "pair costs >= 2 balanced edits: bdist >= 2j";

    nlohmann::json rows = nlohmann::json::array();
    for (const auto& tr : trials)
        rows.push_back({{"n", tr.n},
                        {"seed", tr.seed},
                        {"verdict", tr.verdict},
                        {"stored_peak", tr.stored_peak},
                        {"stack_max", tr.stack_max},
                        {"t", tr.t},
                        {"k", tr.k},
                        {"T", tr.T},
                        {"ms", tr.ms}});
    j["trials"] = std::move(rows);
    j["accept_rate"] = nlohmann::json::object();
    for (const auto& [n, rate] : accept_rate)
        j["accept_rate"][std::to_string(n)] = rate;
    if (fit.ok) j["memory_fit"] = {{"c", fit.c}, {"p", fit.p}};
    return j;
}

} // namespace vplt
