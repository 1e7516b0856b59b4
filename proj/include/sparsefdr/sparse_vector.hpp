#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sparsefdr {

/// Dense coefficient vector with an exact-zero support convention: a
/// coordinate belongs to the support iff its stored value is not 0.0.
/// Estimators produce exact zeros by construction, so no epsilon is
/// ever applied when reading the support.
struct SparseVector {
    std::vector<double> entries;

    SparseVector() = default;
    explicit SparseVector(std::vector<double> values) : entries(std::move(values)) {}

    static SparseVector zeros(std::size_t n) {
        return SparseVector(std::vector<double>(n, 0.0));
    }

    std::size_t size() const { return entries.size(); }
    double operator[](std::size_t i) const { return entries[i]; }
    double& operator[](std::size_t i) { return entries[i]; }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i] != 0.0) idx.push_back(i);
        return idx;
    }

    std::size_t support_size() const {
        std::size_t k = 0;
        for (double v : entries)
            if (v != 0.0) ++k;
        return k;
    }

    bool operator==(const SparseVector& other) const = default;
};

/// A realized normal-means dataset y = truth + noise (unit noise scale).
struct MeansInstance {
    std::size_t n = 0;
    SparseVector y;
    SparseVector truth;
    std::uint64_t seed = 0;
};

}  // namespace sparsefdr
