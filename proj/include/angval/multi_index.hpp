#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "angval/errors.hpp"

namespace angval {

inline long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Strictly increasing tuple of basis indices in [0, n).  The canonical
// ordering of the induced exterior-power basis is lexicographic on these
// tuples; every dense coefficient array in this library uses that order.
// Internally a tuple is a bitmask (bit i set <=> index i present), which
// makes wedge signs popcount arithmetic.
class MultiIndex {
public:
    MultiIndex() = default;

    static MultiIndex from_indices(const std::vector<int>& idx, int n) {
        std::uint32_t m = 0;
        int prev = -1;
        for (int i : idx) {
            if (i <= prev || i < 0 || i >= n)
                throw Error("MultiIndex: indices must be strictly increasing in [0, n)");
            m |= (1u << i);
            prev = i;
        }
        return MultiIndex(m);
    }

    static MultiIndex from_mask(std::uint32_t mask) { return MultiIndex(mask); }

    std::uint32_t mask() const { return mask_; }
    int degree() const { return std::popcount(mask_); }
    bool contains(int i) const { return (mask_ >> i) & 1u; }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (std::uint32_t m = mask_; m; m &= m - 1)
            out.push_back(std::countr_zero(m));
        return out;
    }

    // Position in the canonical ordering of the degree-k subsets of [0, n).
    int rank(int n) const {
        int k = degree();
        long r = 0;
        int j = 1, prev = -1;
        for (int a : indices()) {
            for (int v = prev + 1; v < a; ++v) r += binomial(n - 1 - v, k - j);
            prev = a;
            ++j;
        }
        return static_cast<int>(r);
    }

    static MultiIndex from_rank(int n, int k, long r) {
        std::uint32_t m = 0;
        int v = 0;
        for (int j = 1; j <= k; ++j) {
            while (true) {
                long c = binomial(n - 1 - v, k - j);
                if (r < c) break;
                r -= c;
                ++v;
            }
            m |= (1u << v);
            ++v;
        }
        return MultiIndex(m);
    }

    // All degree-k multi-indices of [0, n) in canonical order.
    static std::vector<MultiIndex> all(int n, int k) {
        std::vector<MultiIndex> out;
        out.reserve(binomial(n, k));
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        if (k == 0) {
            out.push_back(MultiIndex(0));
            return out;
        }
        if (k > n) return out;
        while (true) {
            std::uint32_t m = 0;
            for (int i : idx) m |= (1u << i);
            out.push_back(MultiIndex(m));
            int i = k - 1;
            while (i >= 0 && idx[i] == n - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        return out;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int i : indices()) {
            if (!first) s += ",";
            s += std::to_string(i + 1);
            first = false;
        }
        return s + "}";
    }

    bool operator==(const MultiIndex& o) const = default;

private:
    explicit MultiIndex(std::uint32_t m) : mask_(m) {}
    std::uint32_t mask_ = 0;
};

// Sign of e_I ^ e_J relative to e_{sorted(I u J)}: parity of the number of
// inversions when merging the two sorted tuples.  This is the single source
// of orientation truth for the whole library.
inline int merge_sign(std::uint32_t I, std::uint32_t J) {
    int inv = 0;
    for (std::uint32_t m = J; m; m &= m - 1) {
        int j = std::countr_zero(m);
        inv += std::popcount(I >> (j + 1));
    }
    return (inv & 1) ? -1 : 1;
}

}  // namespace angval
