// Gray-code Sobol sequence, up to 6 dimensions, 32-bit resolution.
// The "seed" of a sampling cloud is the number of initial points skipped;
// reports record it so every cloud is reproducible.
#ifndef RVP_SOBOL_HPP
#define RVP_SOBOL_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rvp {

class Sobol {
public:
    explicit Sobol(int dim, std::uint64_t skip = 0) : dim_(dim), x_(static_cast<size_t>(dim), 0) {
        if (dim < 1 || dim > 6) throw std::invalid_argument("Sobol: 1..6 dimensions supported");
        static const struct {
            int s;
            std::uint32_t a;
            std::uint32_t m[4];
        } tab[6] = {
            {0, 0, {0, 0, 0, 0}},    // van der Corput
            {1, 0, {1, 0, 0, 0}},
            {2, 1, {1, 3, 0, 0}},
            {3, 1, {1, 3, 1, 0}},
            {3, 2, {1, 1, 1, 0}},
            {4, 1, {1, 1, 3, 3}},
        };
        v_.assign(static_cast<size_t>(dim), std::vector<std::uint32_t>(kBits));
        for (int d = 0; d < dim; ++d) {
            auto& v = v_[static_cast<size_t>(d)];
            if (d == 0) {
                for (int k = 0; k < kBits; ++k) v[static_cast<size_t>(k)] = 1u << (31 - k);
                continue;
            }
            const auto& row = tab[d];
            const int s = row.s;
            for (int k = 0; k < s; ++k) v[static_cast<size_t>(k)] = row.m[k] << (31 - k);
            for (int k = s; k < kBits; ++k) {
                std::uint32_t val = v[static_cast<size_t>(k - s)] ^ (v[static_cast<size_t>(k - s)] >> s);
                for (int j = 1; j < s; ++j)
                    if ((row.a >> (s - 1 - j)) & 1u) val ^= v[static_cast<size_t>(k - j)];
                v[static_cast<size_t>(k)] = val;
            }
        }
        for (std::uint64_t i = 0; i < skip; ++i) advance();
    }

    std::vector<double> next() {
        advance();
        std::vector<double> out(static_cast<size_t>(dim_));
        for (int d = 0; d < dim_; ++d)
            out[static_cast<size_t>(d)] = static_cast<double>(x_[static_cast<size_t>(d)]) /
                                          4294967296.0;
        return out;
    }

private:
    static constexpr int kBits = 32;
    int dim_;
    std::uint64_t index_ = 0;
    std::vector<std::uint32_t> x_;
    std::vector<std::vector<std::uint32_t>> v_;

    void advance() {
        // lowest zero bit of the index gives the direction to flip
        std::uint64_t value = index_++;
        int c = 0;
        while (value & 1u) {
            value >>= 1;
            ++c;
        }
        for (int d = 0; d < dim_; ++d) x_[static_cast<size_t>(d)] ^= v_[static_cast<size_t>(d)][static_cast<size_t>(c)];
    }
};

} // namespace rvp

#endif
