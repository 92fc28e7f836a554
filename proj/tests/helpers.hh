/* helpers.hh -- exhaustive word enumeration shared by the test suites */

#ifndef VPLT_TESTS_HELPERS_HH_
#define VPLT_TESTS_HELPERS_HH_

#include <cstddef>
#include <functional>
#include <vector>

#include "vplt/vpa.hh"

namespace vplt::testing {

/// All words (balanced or not, but never dipping below height 0 and never
/// ending above it unless allow_unbalanced) of length <= max_len. The
/// callback sees each word exactly once, including the empty word.
inline void for_each_word(const Vpa& vpa, std::size_t max_len,
                          const std::function<void(const std::vector<int>&)>& fn,
                          bool balanced_only = true) {
    std::vector<int> word;
    std::function<void(long long)> rec = [&](long long h) {
        if (!balanced_only || h == 0) fn(word);
        if (word.size() == max_len) return;
        for (int s = 0; s < static_cast<int>(vpa.num_symbols()); ++s) {
            long long h2 = h;
            if (vpa.is_push(s)) ++h2;
            else if (vpa.is_pop(s)) --h2;
            if (balanced_only) {
                if (h2 < 0) continue;
                if (h2 > static_cast<long long>(max_len - word.size() - 1)) continue;
            }
            word.push_back(s);
            rec(balanced_only ? h2 : 0);
            word.pop_back();
        }
    };
    rec(0);
}

inline void for_each_balanced(const Vpa& vpa, std::size_t max_len,
                              const std::function<void(const std::vector<int>&)>& fn) {
    for_each_word(vpa, max_len, fn, true);
}

/// All balanced peaks (every push before the first pop) of length <= max_len.
inline void for_each_peak(const Vpa& vpa, std::size_t max_len,
                          const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> word;
    std::function<void(long long, bool)> rec = [&](long long h, bool popped) {
        if (h == 0) fn(word);
        if (word.size() == max_len) return;
        for (int s = 0; s < static_cast<int>(vpa.num_symbols()); ++s) {
            long long h2 = h;
            bool popped2 = popped;
            if (vpa.is_push(s)) {
                if (popped) continue;
                ++h2;
            } else if (vpa.is_pop(s)) {
                if (h == 0) continue;
                --h2;
                popped2 = true;
            }
            if (h2 > static_cast<long long>(max_len - word.size() - 1)) continue;
            word.push_back(s);
            rec(h2, popped2);
            word.pop_back();
        }
    };
    rec(0, false);
}

} // namespace vplt::testing

#endif // VPLT_TESTS_HELPERS_HH_
