/* tester.hh -- relation approximation from sampled fragments of a peak */

#ifndef VPLT_TESTER_HH_
#define VPLT_TESTER_HH_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "vplt/slicing.hh"
#include "vplt/vpa.hh"
#include "vplt/weighted.hh"

namespace vplt {

/// Sample-count parameters for one relation approximation.
struct ApproxParams {
    std::uint64_t m = 0;
    std::uint64_t d = 0;
    double epsilon = 0;
    double eta = 0;
    std::uint64_t k = 0;
    std::uint64_t t = 0;
    std::uint64_t T = 0;

    /// k = ceil(4dm/eps), t = c*ceil(4dm^3 log(1/eta)/eps), T = 4kt; the
    /// factor c is 2 for general balanced words and 4 for peak profiles.
    static ApproxParams derive(std::uint64_t m, std::uint64_t d, double epsilon,
                               double eta, bool peak_profile = false);
};

/// Raised when two fragments disagree about the same stream position: the
/// sampler produced inconsistent observations, which is a bug, not data.
struct FragmentConflict : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact composed transition relation (over pair states) of a factor of the
/// sliced word.
BitMatrix fragment_relation(const SlicingNfa& nfa,
                            const std::vector<SlicedLetter>& factor);

/// Consistency test: aligns all fragment letters on the sliced word by
/// height and position, certifies adjacency where the observations prove it,
/// and closes every unobserved stretch with the reachability relation of the
/// slicing automaton. Returns R = set of (p,q) for which some consistent run
/// from (p,q) to a diagonal state exists. Contains every true transition of
/// the sampled peak.
Relation approximate_relation(const Vpa& vpa, const SlicingNfa& nfa,
                              const std::vector<SampleFragment>& fragments);

} // namespace vplt

#endif // VPLT_TESTER_HH_
