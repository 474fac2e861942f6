// Gauss-Legendre rules (Newton on the Legendre recurrence) plus the mapped
// composite helpers used for momentum-space integrals.
#ifndef RVP_QUADRATURE_HPP
#define RVP_QUADRATURE_HPP

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rvp {

struct QuadRule {
    std::vector<double> x; // nodes
    std::vector<double> w; // weights
};

// n-point Gauss-Legendre rule on [-1,1].
inline const QuadRule& gauss_legendre(int n) {
    static std::map<int, QuadRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    QuadRule r;
    r.x.resize(static_cast<size_t>(n));
    r.w.resize(static_cast<size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.x[static_cast<size_t>(i)] = -z;
        r.x[static_cast<size_t>(n - 1 - i)] = z;
        r.w[static_cast<size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[static_cast<size_t>(n - 1 - i)] = r.w[static_cast<size_t>(i)];
    }
    return cache.emplace(n, std::move(r)).first->second;
}

// Rule mapped to [a,b].
inline QuadRule gauss_legendre_on(double a, double b, int n) {
    const QuadRule& base = gauss_legendre(n);
    QuadRule r;
    r.x.reserve(base.x.size());
    r.w.reserve(base.w.size());
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (size_t i = 0; i < base.x.size(); ++i) {
        r.x.push_back(mid + half * base.x[i]);
        r.w.push_back(half * base.w[i]);
    }
    return r;
}

// Composite rule on geometrically growing segments [0,first],
// [first, first(1+ratio)], ... truncated at `cut`; resolves
// exponential-type decays with few nodes.
inline QuadRule geometric_segments(double cut, int nodes_per_segment, double first = 1.0,
                                   double ratio = 2.0) {
    QuadRule out;
    double a = 0.0;
    double len = first;
    while (a < cut) {
        const double b = std::min(cut, a + len);
        const QuadRule seg = gauss_legendre_on(a, b, nodes_per_segment);
        out.x.insert(out.x.end(), seg.x.begin(), seg.x.end());
        out.w.insert(out.w.end(), seg.w.begin(), seg.w.end());
        a = b;
        len *= ratio;
    }
    return out;
}

} // namespace rvp

#endif
