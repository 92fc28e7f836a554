/* bitmatrix.hh -- dense boolean matrices for state relations */

#ifndef VPLT_BITMATRIX_HH_
#define VPLT_BITMATRIX_HH_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace vplt {

/// Square boolean matrix with bit-packed rows. Used both for relations over
/// the automaton states Q (entry (p,q) = "some balanced word takes p to q")
/// and for one-step relations over the pair states Q x Q of the slicing
/// automaton.
class BitMatrix {
public:
    BitMatrix() = default;

    explicit BitMatrix(std::size_t n)
        : n_(n), words_((n + 63) / 64), bits_(n_ * words_, 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i);
        return m;
    }

    static BitMatrix full(std::size_t n) {
        BitMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.set(i, j);
        return m;
    }

    std::size_t size() const { return n_; }

    bool get(std::size_t i, std::size_t j) const {
        return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
    }

    void set(std::size_t i, std::size_t j, bool v = true) {
        std::uint64_t& w = bits_[i * words_ + j / 64];
        const std::uint64_t mask = std::uint64_t{1} << (j % 64);
        if (v) w |= mask; else w &= ~mask;
    }

    bool empty() const {
        for (auto w : bits_) if (w) return false;
        return true;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : bits_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    /// Relation composition: (this * rhs)(i,j) iff exists r with
    /// this(i,r) and rhs(r,j).
    BitMatrix compose(const BitMatrix& rhs) const {
        BitMatrix out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            std::uint64_t* orow = &out.bits_[i * words_];
            for (std::size_t r = 0; r < n_; ++r) {
                if (!get(i, r)) continue;
                const std::uint64_t* rrow = &rhs.bits_[r * words_];
                for (std::size_t w = 0; w < words_; ++w) orow[w] |= rrow[w];
            }
        }
        return out;
    }

    BitMatrix& operator|=(const BitMatrix& rhs) {
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= rhs.bits_[i];
        return *this;
    }

    /// In-place reflexive-transitive closure.
    void close() {
        for (std::size_t i = 0; i < n_; ++i) set(i, i);
        // Warshall, row-vectorized over the inner index
        for (std::size_t r = 0; r < n_; ++r) {
            for (std::size_t i = 0; i < n_; ++i) {
                if (!get(i, r)) continue;
                std::uint64_t* irow = &bits_[i * words_];
                const std::uint64_t* rrow = &bits_[r * words_];
                for (std::size_t w = 0; w < words_; ++w) irow[w] |= rrow[w];
            }
        }
    }

    bool is_subset_of(const BitMatrix& rhs) const {
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & ~rhs.bits_[i]) return false;
        return true;
    }

    bool operator==(const BitMatrix& rhs) const {
        return n_ == rhs.n_ && bits_ == rhs.bits_;
    }
    bool operator!=(const BitMatrix& rhs) const { return !(*this == rhs); }

    std::size_t hash() const {
        std::size_t h = n_;
        for (auto w : bits_) h = h * 0x9e3779b97f4a7c15ULL + w;
        return h;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) s += get(i, j) ? '1' : '0';
            s += '\n';
        }
        return s;
    }

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Relation over the automaton states: entry (p,q) means some balanced word
/// takes p to q. Realizability of every set entry is preserved by only
/// producing relations from exact simulation, composition, or the tester.
using Relation = BitMatrix;

} // namespace vplt

struct BitMatrixHash {
    std::size_t operator()(const vplt::BitMatrix& m) const { return m.hash(); }
};

#endif // VPLT_BITMATRIX_HH_
