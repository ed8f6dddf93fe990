#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace infoaccess {

/// Union-find with path halving and union by size.
class DisjointSet {
public:
    explicit DisjointSet(std::size_t n = 0) { reset(n); }

    void reset(std::size_t n) {
        parent_.resize(n);
        size_.assign(n, 1);
        std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
        sets_ = n;
    }

    std::uint32_t find(std::uint32_t x) noexcept {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    /// Returns false when a and b were already joined.
    bool unite(std::uint32_t a, std::uint32_t b) noexcept {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        --sets_;
        return true;
    }

    bool same(std::uint32_t a, std::uint32_t b) noexcept { return find(a) == find(b); }
    std::uint32_t set_size(std::uint32_t x) noexcept { return size_[find(x)]; }
    std::size_t set_count() const noexcept { return sets_; }
    std::size_t size() const noexcept { return parent_.size(); }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
    std::size_t sets_ = 0;
};

}  // namespace infoaccess
