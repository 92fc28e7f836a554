/* vplt -- streaming recognizers and testers for visibly pushdown languages */

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "vplt/exact.hh"
#include "vplt/experiment.hh"
#include "vplt/generators.hh"
#include "vplt/oracle.hh"
#include "vplt/stream_tester.hh"
#include "vplt/vpa.hh"

namespace {

using nlohmann::json;
using namespace vplt;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Vpa load_vpa(const std::string& path) { return parse_vpa(slurp(path)); }

struct Stream {
    std::vector<std::string> tokens;
    std::optional<std::uint64_t> n; // declared by a "%n <N>" header
};

// Whitespace-separated tokens; '#' starts a comment until end of line; an
// optional "%n <N>" pair declares the stream length up front.
Stream read_stream(std::istream& in) {
    Stream s;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            if (tok == "%n") {
                std::uint64_t n = 0;
                if (!(ls >> n)) throw std::runtime_error("%n needs a number");
                s.n = n;
            } else {
                s.tokens.push_back(tok);
            }
        }
    }
    return s;
}

Stream read_stream_path(const std::string& path) {
    if (path.empty() || path == "-") return read_stream(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_stream(in);
}

std::string render_stream(const Vpa& vpa, const std::vector<int>& word) {
    std::ostringstream out;
    out << "%n " << word.size() << "\n";
    for (std::size_t i = 0; i < word.size(); ++i) {
        out << vpa.symbols[static_cast<std::size_t>(word[i])];
        out << ((i + 1) % 32 == 0 || i + 1 == word.size() ? "\n" : " ");
    }
    return out.str();
}

int cmd_exact(const std::string& vpa_path, const std::string& input_path,
              bool stats) {
    const Vpa vpa = load_vpa(vpa_path);
    const Stream s = read_stream_path(input_path);
    const std::vector<int> word = tokens_to_word(vpa, s.tokens);
    const ExactResult r = run_exact(vpa, word);
    if (stats) {
        json out = {{"max_stack", r.stats.max_stack},
                    {"max_depth", r.stats.max_depth},
                    {"n", r.stats.n}};
        std::cout << out.dump(2) << "\n";
    }
    return r.accepted ? 0 : 1;
}

int cmd_test(const std::string& vpa_path, const std::string& input_path,
             TesterConfig cfg) {
    const Vpa vpa = load_vpa(vpa_path);
    const Stream s = read_stream_path(input_path);
    if (cfg.n == 0) {
        if (!s.n) throw std::runtime_error("stream length unknown: pass --n or a %n header");
        cfg.n = *s.n;
    }
    const std::vector<int> word = tokens_to_word(vpa, s.tokens);
    const TesterReport r = run_tester(vpa, word, cfg);
    json out = {{"verdict", r.verdict},
                {"seed", r.seed},
                {"n", r.n},
                {"epsilon", r.epsilon},
                {"eta", r.eta},
                {"T", r.params.T},
                {"k", r.params.k},
                {"max_stack", r.max_stack},
                {"decomposition_sizes", r.decomposition_sizes},
                {"stored_items_peak", r.stored_items_peak}};
    if (!r.reason.empty()) out["reason"] = r.reason;
    std::cout << out.dump(2) << "\n";
    return r.verdict == "accept" ? 0 : 1;
}

Profile parse_profile(const std::string& s) {
    if (s == "theorem") return Profile::Theorem;
    if (s == "desk") return Profile::Desk;
    if (s == "peak") return Profile::Peak;
    throw std::runtime_error("unknown profile: " + s);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"streaming recognizers and property testers for visibly "
                 "pushdown languages"};
    app.require_subcommand(1);

    // exact
    std::string vpa_path, input_path;
    bool stats = false;
    auto* exact = app.add_subcommand("exact", "exact streaming recognizer");
    exact->add_option("--vpa", vpa_path, "machine description file")->required();
    exact->add_option("--input", input_path, "token stream (default: stdin)");
    exact->add_flag("--stats", stats, "emit JSON run statistics");

    // test
    TesterConfig tcfg;
    std::string profile_name = "desk";
    std::uint64_t opt_T = 0, opt_k = 0;
    auto* test = app.add_subcommand("test", "sketch-based streaming tester");
    test->add_option("--vpa", vpa_path, "machine description file")->required();
    test->add_option("--input", input_path, "token stream (default: stdin)");
    test->add_option("--epsilon", tcfg.epsilon, "farness parameter");
    test->add_option("--eta", tcfg.eta, "error probability");
    test->add_option("--n", tcfg.n, "declared stream length (or %n header)");
    test->add_option("--seed", tcfg.seed, "RNG seed (xoshiro256**)");
    test->add_option("--profile", profile_name, "theorem|desk|peak");
    test->add_option("--T", opt_T, "override samplings per suffix");
    test->add_option("--k", opt_k, "override window parameter");
    test->add_flag("--exact-mode", tcfg.exact_mode,
                   "store all letters, compute exact relations");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "brute-force ground truth");
    oracle->require_subcommand(1);
    std::string file1, file2;
    auto* obdist = oracle->add_subcommand("bdist", "balanced-edit distance");
    obdist->add_option("--vpa", vpa_path, "machine (classifies the symbols)")->required();
    obdist->add_option("file1", file1)->required();
    obdist->add_option("file2", file2)->required();
    std::uint64_t bound = 8;
    auto* ofar = oracle->add_subcommand("fardist", "distance to the language");
    ofar->add_option("--vpa", vpa_path)->required();
    ofar->add_option("--input", input_path, "token stream (default: stdin)");
    ofar->add_option("--bound", bound, "search radius");

    // gen
    auto* gen = app.add_subcommand("gen", "instance generators");
    gen->require_subcommand(1);
    std::uint64_t gen_n = 0, gen_seed = 0;
    std::size_t gen_j = 1;
    std::string gen_mode = "member";
    auto* gdisj = gen->add_subcommand("disj", "Disj members and far instances");
    gdisj->add_option("--n", gen_n, "stream length")->required();
    gdisj->add_option("--mode", gen_mode, "member|far");
    gdisj->add_option("--j", gen_j, "matched pairs");
    gdisj->add_option("--seed", gen_seed);
    auto* gmember = gen->add_subcommand("member", "random member of a machine");
    gmember->add_option("--vpa", vpa_path)->required();
    gmember->add_option("--n", gen_n, "word length")->required();
    gmember->add_option("--seed", gen_seed);

    // run
    std::string config_path;
    auto* run = app.add_subcommand("run", "experiment suite from a JSON config");
    run->add_option("--config", config_path, "config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*exact) return cmd_exact(vpa_path, input_path, stats);
        if (*test) {
            tcfg.profile = parse_profile(profile_name);
            if (opt_T) tcfg.T_override = opt_T;
            if (opt_k) tcfg.k_override = opt_k;
            return cmd_test(vpa_path, input_path, tcfg);
        }
        if (*obdist) {
            const Vpa vpa = load_vpa(vpa_path);
            const auto w1 = tokens_to_word(vpa, read_stream_path(file1).tokens);
            const auto w2 = tokens_to_word(vpa, read_stream_path(file2).tokens);
            std::cout << bdist(vpa, weighted_word_of(vpa, w1),
                               weighted_word_of(vpa, w2))
                      << "\n";
            return 0;
        }
        if (*ofar) {
            const Vpa vpa = load_vpa(vpa_path);
            const auto w = tokens_to_word(vpa, read_stream_path(input_path).tokens);
            const auto d = bdist_to_language(vpa, w, bound);
            if (d) std::cout << *d << "\n";
            else std::cout << "> " << bound << "\n";
            return 0;
        }
        if (*gdisj) {
            const Vpa vpa = disj_machine();
            std::vector<int> word;
            if (gen_mode == "member") {
                Xoshiro256 rng(gen_seed);
                word = gen_disj_member(vpa, gen_n, gen_j, rng);
            } else if (gen_mode == "far") {
                word = gen_disj_far(vpa, gen_n, gen_j);
            } else {
                throw std::runtime_error("unknown mode: " + gen_mode);
            }
            std::cout << render_stream(vpa, word);
            return 0;
        }
        if (*gmember) {
            const Vpa vpa = load_vpa(vpa_path);
            MemberSampler sampler(vpa, gen_n);
            Xoshiro256 rng(gen_seed);
            std::cout << render_stream(vpa, sampler.sample(gen_n, rng));
            return 0;
        }
        if (*run) {
            const json j = json::parse(slurp(config_path));
            const ExperimentConfig cfg = ExperimentConfig::from_json(j);
            const ExperimentReport report = run_experiment(cfg);
            std::cout << report.to_json(cfg).dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
