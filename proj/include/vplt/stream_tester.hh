/* stream_tester.hh -- streaming membership tester with sketched peaks */

#ifndef VPLT_STREAM_TESTER_HH_
#define VPLT_STREAM_TESTER_HH_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vplt/rng.hh"
#include "vplt/sampling.hh"
#include "vplt/slicing.hh"
#include "vplt/suffix_sampling.hh"
#include "vplt/tester.hh"
#include "vplt/vpa.hh"

namespace vplt {

/// Parameter profiles: `Theorem` instantiates the proved formulas (usually
/// astronomically large; useful to test the arithmetic), `Desk` uses small
/// experiment-friendly defaults, `Peak` sizes the sampler for single-peak
/// inputs with the slicing diameter.
enum class Profile { Theorem, Desk, Peak };

struct TesterConfig {
    double epsilon = 0.1;
    double eta = 1.0 / 3.0;
    std::uint64_t n = 0; // declared stream length; required
    std::uint64_t seed = 0;
    Profile profile = Profile::Desk;
    std::optional<std::uint64_t> T_override;
    std::optional<std::uint64_t> k_override;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> alpha_override;
    bool exact_mode = false; // store every letter, compute exact relations
};

/// Concrete parameters derived from a config for a given machine.
struct TesterParams {
    std::uint64_t T = 0; // samplings per suffix (2T stored)
    std::uint64_t k = 0; // window parameter
    std::uint64_t t = 0; // fragment groups (T = 4kt when derived)
    std::uint64_t d = 0; // diameter bound used
    std::uint64_t alpha_num = 2, alpha_den = 1;

    static TesterParams derive(const Vpa& vpa, const TesterConfig& cfg);
};

struct TesterReport {
    std::string verdict; // "accept" or "reject"
    std::string reason;  // "", "rejected" or "unbalanced"
    std::uint64_t seed = 0;
    std::uint64_t n = 0;          // declared length
    std::uint64_t n_read = 0;     // letters actually read
    double epsilon = 0, eta = 0;
    TesterParams params;
    std::size_t max_stack = 0;
    std::size_t stored_items_peak = 0;
    std::vector<std::size_t> decomposition_sizes; // at the storage peak
};

/// One sketched unfinished peak: the scalar fields of the sketch plus the
/// suffix decomposition with 2T window samplers per suffix.
struct PeakSketch {
    std::uint64_t total_weight = 0;
    std::uint64_t first_weight = 0;
    std::uint64_t first_height = 0;
    std::uint64_t start_position = 0;
    bool has_pop = false;
    std::uint32_t max_depth = 0;
    SuffixSampling<WkCell> d;
    std::vector<WeightedLetter> letters; // exact mode only

    bool empty() const { return total_weight == 0; }
    std::uint64_t unmatched_pushes() const {
        return d.empty() ? 0 : d.entries.front().unmatched_pushes;
    }
    std::size_t stored_letters() const {
        return d.stored_letters() + letters.size();
    }
};

/// Streaming tester: the exact recognizer's control flow with peaks held as
/// sketches and relations approximated from sampled fragments. Accepts every
/// member regardless of the random seed; rejects far words with high
/// probability when the parameters are large enough.
class StreamTester {
public:
    StreamTester(const Vpa& vpa, const TesterConfig& cfg);

    bool feed(int symbol);
    TesterReport finish();

private:
    PeakSketch fresh_sketch() const;
    void append(PeakSketch& sk, const WeightedLetter& l, SymClass cls);
    Relation relation_whole(const PeakSketch& sk) const;
    Relation relation_of_entry(const PeakSketch& sk, std::size_t entry) const;
    void merge_balanced();
    void absorb();
    void note_storage(bool force);

    const Vpa& vpa_;
    SlicingNfa nfa_;
    TesterConfig cfg_;
    TesterParams params_;
    Xoshiro256 rng_;
    Relation r_temp_;
    PeakSketch u0_;
    std::vector<PeakSketch> stack_;
    std::uint64_t height_ = 0;
    std::uint64_t pos_ = 0;
    bool dead_ = false;
    std::uint64_t storage_check_every_ = 1;
    TesterReport report_;
};

TesterReport run_tester(const Vpa& vpa, const std::vector<int>& word,
                        const TesterConfig& cfg);

} // namespace vplt

#endif // VPLT_STREAM_TESTER_HH_
