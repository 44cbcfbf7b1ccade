#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace augbench {

/// Shape-tagged row-major real array.
struct Tensor {
    std::vector<int> shape;
    std::vector<double> data;

    static Tensor zeros(std::vector<int> shp) {
        Tensor t;
        std::int64_t n = 1;
        for (int e : shp) n *= e;
        t.shape = std::move(shp);
        t.data.assign(static_cast<std::size_t>(n), 0.0);
        return t;
    }

    std::int64_t size() const { return static_cast<std::int64_t>(data.size()); }

    double& operator[](std::size_t i) { return data[i]; }
    double operator[](std::size_t i) const { return data[i]; }

    bool operator==(const Tensor& o) const = default;
};

bool all_finite(const Tensor& t);

} // namespace augbench
