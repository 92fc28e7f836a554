/* exact.hh -- exact streaming recognizer with peak compression */

#ifndef VPLT_EXACT_HH_
#define VPLT_EXACT_HH_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vplt/vpa.hh"
#include "vplt/weighted.hh"

namespace vplt {

struct ExactStats {
    std::uint64_t n = 0;           // base letters read
    std::size_t max_stack = 0;     // peak count of frozen unfinished peaks
    std::uint32_t max_depth = 0;   // peak nesting depth of relation letters
    std::size_t max_letters = 0;   // peak count of letters held across u0 + stack
    bool balanced = false;
    // every compression input kept its relation letters at <= 2/3 of its
    // total weight (what bounds the nesting depth)
    bool compress_bound_ok = true;
};

struct ExactResult {
    bool accepted = false;
    std::string reason; // "rejected" or "unbalanced" when not accepted
    ExactStats stats;
};

/// Exact set of transitions of a balanced weighted word; letters may carry
/// relations. Throws on unbalanced input.
Relation relation_of_weighted(const Vpa& vpa, const std::vector<WeightedLetter>& letters,
                              std::size_t begin, std::size_t end);

/// Streaming recognizer. Keeps one unfinished peak plus a logarithmic stack
/// of frozen unfinished peaks; each balanced factor collapses into a single
/// relation letter. The observer, when set, sees every letter of the
/// effective (compressed) word as it enters the unfinished peak.
class ExactRecognizer {
public:
    explicit ExactRecognizer(const Vpa& vpa);

    /// Feeds one base symbol. Returns false once the input is known
    /// unbalanced; further letters are ignored.
    bool feed(int symbol);

    /// Verdict over everything fed so far (stream end).
    ExactResult finish() const;

    const ExactStats& stats() const { return stats_; }

private:
    struct Frozen {
        std::vector<WeightedLetter> letters;
        std::vector<std::size_t> open_pushes; // indices of unmatched pushes
        std::uint64_t weight = 0;
        std::uint64_t suffix_weight = 0; // weight of the maximal balanced suffix
        std::size_t suffix_begin = 0;    // its first letter index
    };

    void append(WeightedLetter l);
    void merge_balanced();
    void absorb();
    void note_storage();
    std::uint64_t open_below_() const { return open_below_cache_; }

    const Vpa& vpa_;
    Relation r_temp_;
    std::vector<WeightedLetter> u0_;
    std::vector<std::size_t> u0_open_;
    std::uint64_t u0_weight_ = 0;
    bool u0_has_pop_ = false;
    std::vector<Frozen> stack_;
    std::uint64_t open_below_cache_ = 0; // unmatched pushes inside frozen items
    std::uint64_t pos_ = 0;
    bool dead_ = false;
    ExactStats stats_;
};

ExactResult run_exact(const Vpa& vpa, const std::vector<int>& word);

} // namespace vplt

#endif // VPLT_EXACT_HH_
