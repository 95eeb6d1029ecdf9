#include "eisl/brute_force.hpp"

#include <algorithm>
#include <cmath>

#include "eisl/error.hpp"

namespace eisl::brute_force {

namespace {

std::int64_t root(std::int64_t x) {
    if (x < 0) return -1;
    std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

}  // namespace

std::uint64_t pack(const std::int64_t* entries, int n) {
    std::uint64_t key = 0;
    for (int i = 0; i < n * n; ++i) {
        if (entries[i] < -63 || entries[i] > 63) fail(ErrorKind::domain, "entry out of packing range");
        key = (key << 7) | static_cast<std::uint64_t>(entries[i] + 64);
    }
    return key;
}

std::vector<std::uint64_t> ball2(std::int64_t B) {
    std::vector<std::uint64_t> out;
    const std::int64_t m = root(B);
    for (std::int64_t c = m; c >= -m; --c)
        for (std::int64_t b = m; b >= -m; --b)
            for (std::int64_t a = m; a >= -m; --a) {
                const std::int64_t partial = a * a + b * b + c * c;
                if (partial > B) continue;
                if (a == 0) {
                    if (b * c != -1) continue;
                    for (std::int64_t d = -m; d <= m; ++d)
                        if (partial + d * d <= B) {
                            const std::int64_t e[4] = {a, b, c, d};
                            out.push_back(pack(e, 2));
                        }
                    continue;
                }
                if ((1 + b * c) % a != 0) continue;
                const std::int64_t d = (1 + b * c) / a;
                if (partial + d * d > B) continue;
                const std::int64_t e[4] = {a, b, c, d};
                out.push_back(pack(e, 2));
            }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> ball3(std::int64_t B) {
    std::vector<std::uint64_t> out;
    std::int64_t g[9];
    // Entries 8, 7, ..., 1 in that order; g[0] solved last.
    auto rec = [&](auto&& self, int idx, std::int64_t used) -> void {
        if (idx == 0) {
            const std::int64_t c11 = g[4] * g[8] - g[5] * g[7];
            const std::int64_t rest = -g[1] * (g[3] * g[8] - g[5] * g[6]) + g[2] * (g[3] * g[7] - g[4] * g[6]);
            if (c11 != 0) {
                if ((1 - rest) % c11 != 0) return;
                g[0] = (1 - rest) / c11;
                if (used + g[0] * g[0] <= B) out.push_back(pack(g, 3));
                return;
            }
            if (rest != 1) return;
            const std::int64_t m = root(B - used);
            for (g[0] = -m; g[0] <= m; ++g[0]) out.push_back(pack(g, 3));
            return;
        }
        const std::int64_t m = root(B - used);
        for (std::int64_t v = m; v >= -m; --v) {
            g[idx] = v;
            self(self, idx - 1, used + v * v);
        }
    };
    rec(rec, 8, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t sl_count_exhaustive(int n, std::int64_t q) {
    if (n != 2 && n != 3) fail(ErrorKind::domain, "dimension must be 2 or 3");
    const int k = n * n;
    std::int64_t e[9] = {};
    std::int64_t count = 0;
    while (true) {
        std::int64_t det = n == 2 ? e[0] * e[3] - e[1] * e[2]
                                  : e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6]) +
                                        e[2] * (e[3] * e[7] - e[4] * e[6]);
        det %= q;
        if (det < 0) det += q;
        if (det == 1 % q) ++count;
        int i = 0;
        while (i < k && ++e[i] == q) e[i++] = 0;
        if (i == k) break;
    }
    return count;
}

}  // namespace eisl::brute_force
