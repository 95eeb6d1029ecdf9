#include "eisl/congruence_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eisl/count_cache.hpp"
#include "eisl/error.hpp"
#include "eisl/parallel.hpp"
#include "eisl/simd/kernels.hpp"

namespace eisl::lattice {

namespace {

using i64 = std::int64_t;

i64 isqrt(i64 x) {
    if (x < 0) return -1;
    auto r = static_cast<i64>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

i64 mod(i64 v, i64 q) {
    const i64 r = v % q;
    return r < 0 ? r + q : r;
}

// Smallest v >= lo with v == r (mod q).
i64 first_in_class(i64 lo, i64 r, i64 q) { return lo + mod(r - lo, q); }

// Number of v in [-m, m] with v == r (mod q), and the first one.
struct ClassRange {
    i64 first = 0;
    i64 count = 0;
};

ClassRange class_range(i64 m, i64 r, i64 q) {
    if (m < 0) return {};
    const i64 first = first_in_class(-m, r, q);
    if (first > m) return {first, 0};
    return {first, (m - first) / q + 1};
}

struct Search {
    int n = 2;
    i64 bound = 0;
    i64 q = 1;
    std::array<i64, 9> r{};  // residues in [0, q)

    bool in_class(i64 v, int k) const { return q == 1 || mod(v, q) == r[static_cast<std::size_t>(k)]; }
    i64 step() const { return q; }
};

Search make_search(int n, double R, i64 q, const IntegerMatrix* residue) {
    if (n != 2 && n != 3) fail(ErrorKind::domain, "dimension must be 2 or 3, got " + std::to_string(n));
    if (!(R >= 0.0) || !std::isfinite(R)) fail(ErrorKind::domain, "radius must be finite and nonnegative");
    if (R > radius_guard(n))
        fail(ErrorKind::budget_exceeded, "radius " + std::to_string(R) + " exceeds the guard for n = " + std::to_string(n));
    if (q < 1) fail(ErrorKind::domain, "level must be positive");
    Search s;
    s.n = n;
    s.bound = norm_sq_bound(R);
    s.q = q;
    const IntegerMatrix id = IntegerMatrix::identity(n);
    const IntegerMatrix& res = residue ? *residue : id;
    if (res.n != n) fail(ErrorKind::domain, "residue dimension mismatch");
    for (int k = 0; k < n * n; ++k) s.r[static_cast<std::size_t>(k)] = mod(res.entries[static_cast<std::size_t>(k)], q);
    return s;
}

void check_budget(const Search& s, const EnumerationOptions& opts) {
    const double work = predicted_work(s.n, s.bound, s.q);
    if (work > opts.max_work)
        fail(ErrorKind::budget_exceeded, "predicted work " + std::to_string(work) + " exceeds cap " +
                                             std::to_string(opts.max_work));
}

// Outer prefixes handed to workers: a for n = 2, (g11, g12) for n = 3, lexicographic.
std::vector<std::array<i64, 2>> outer_prefixes(const Search& s) {
    std::vector<std::array<i64, 2>> out;
    const ClassRange a = class_range(isqrt(s.bound), s.r[0], s.q);
    for (i64 i = 0; i < a.count; ++i) {
        const i64 g11 = a.first + i * s.q;
        if (s.n == 2) {
            out.push_back({g11, 0});
            continue;
        }
        const ClassRange b = class_range(isqrt(s.bound - g11 * g11), s.r[1], s.q);
        for (i64 k = 0; k < b.count; ++k) out.push_back({g11, b.first + k * s.q});
    }
    return out;
}

IntegerMatrix make2(i64 a, i64 b, i64 c, i64 d) {
    IntegerMatrix m;
    m.n = 2;
    m.entries = {a, b, c, d, 0, 0, 0, 0, 0};
    m.norm_sq = a * a + b * b + c * c + d * d;
    return m;
}

template <class Emit>
void stream_slice2(const Search& s, i64 a, Emit&& emit) {
    const i64 rem1 = s.bound - a * a;
    const ClassRange bs = class_range(isqrt(rem1), s.r[1], s.q);
    for (i64 ib = 0; ib < bs.count; ++ib) {
        const i64 b = bs.first + ib * s.q;
        const i64 rem2 = rem1 - b * b;
        const ClassRange cs = class_range(isqrt(rem2), s.r[2], s.q);
        for (i64 ic = 0; ic < cs.count; ++ic) {
            const i64 c = cs.first + ic * s.q;
            const i64 rem3 = rem2 - c * c;
            if (a != 0) {
                const i64 num = 1 + b * c;
                if (num % a != 0) continue;
                const i64 d = num / a;
                if (d * d > rem3 || !s.in_class(d, 3)) continue;
                emit(make2(a, b, c, d));
            } else {
                if (b * c != -1) continue;
                const ClassRange ds = class_range(isqrt(rem3), s.r[3], s.q);
                for (i64 id = 0; id < ds.count; ++id) emit(make2(a, b, c, ds.first + id * s.q));
            }
        }
    }
}

i64 count_slice2(const Search& s, i64 a, const simd::KernelTable& kt) {
    if (a == 0) {
        i64 total = 0;
        stream_slice2(s, a, [&](const IntegerMatrix&) { ++total; });
        return total;
    }
    const i64 rem1 = s.bound - a * a;
    const ClassRange bs = class_range(isqrt(rem1), s.r[1], s.q);
    i64 total = 0;
    simd::RowQuery row;
    row.k0 = 1;
    row.divisor = a;
    row.budget = s.bound;
    row.step = s.q;
    row.modulus = s.q > 1 ? s.q : 0;
    row.residue = s.r[3];
    for (i64 ib = 0; ib < bs.count; ++ib) {
        const i64 b = bs.first + ib * s.q;
        const ClassRange cs = class_range(isqrt(rem1 - b * b), s.r[2], s.q);
        if (cs.count == 0) continue;
        row.k1 = b;
        row.base = a * a + b * b;
        row.lane0 = cs.first;
        row.lanes = cs.count;
        total += kt.count_row(row);
    }
    return total;
}

// Iterates the first two rows of an n = 3 matrix with prefix (g11, g12).
// body(rows[6], n12, v[3]) receives rows 1-2, their norm and the cross product.
template <class Body>
void two_rows3(const Search& s, i64 g11, i64 g12, Body&& body) {
    const i64 n1a = g11 * g11 + g12 * g12;
    const ClassRange g13s = class_range(isqrt(s.bound - 2 - n1a), s.r[2], s.q);
    for (i64 i13 = 0; i13 < g13s.count; ++i13) {
        const i64 g13 = g13s.first + i13 * s.q;
        const i64 n1 = n1a + g13 * g13;
        if (n1 == 0) continue;
        const i64 rem_after1 = s.bound - n1 - 1;  // row 3 needs norm >= 1
        const ClassRange g21s = class_range(isqrt(rem_after1 - 0), s.r[3], s.q);
        for (i64 i21 = 0; i21 < g21s.count; ++i21) {
            const i64 g21 = g21s.first + i21 * s.q;
            const i64 ra = rem_after1 - g21 * g21;
            const ClassRange g22s = class_range(isqrt(ra), s.r[4], s.q);
            for (i64 i22 = 0; i22 < g22s.count; ++i22) {
                const i64 g22 = g22s.first + i22 * s.q;
                const i64 rb = ra - g22 * g22;
                const ClassRange g23s = class_range(isqrt(rb), s.r[5], s.q);
                for (i64 i23 = 0; i23 < g23s.count; ++i23) {
                    const i64 g23 = g23s.first + i23 * s.q;
                    const i64 v0 = g12 * g23 - g13 * g22;
                    const i64 v1 = g13 * g21 - g11 * g23;
                    const i64 v2 = g11 * g22 - g12 * g21;
                    if (std::gcd(std::gcd(v0, v1), v2) != 1) continue;  // also rejects v = 0
                    const std::array<i64, 6> rows{g11, g12, g13, g21, g22, g23};
                    const std::array<i64, 3> v{v0, v1, v2};
                    body(rows, n1 + g21 * g21 + g22 * g22 + g23 * g23, v);
                }
            }
        }
    }
}

IntegerMatrix make3(const std::array<i64, 6>& rows, i64 x, i64 y, i64 z) {
    IntegerMatrix m;
    m.n = 3;
    m.entries = {rows[0], rows[1], rows[2], rows[3], rows[4], rows[5], x, y, z};
    m.norm_sq = 0;
    for (const i64 e : m.entries) m.norm_sq += e * e;
    return m;
}

template <class Emit>
void stream_slice3(const Search& s, i64 g11, i64 g12, Emit&& emit) {
    two_rows3(s, g11, g12, [&](const std::array<i64, 6>& rows, i64 n12, const std::array<i64, 3>& v) {
        const i64 rem = s.bound - n12;
        const ClassRange xs = class_range(isqrt(rem), s.r[6], s.q);
        for (i64 ix = 0; ix < xs.count; ++ix) {
            const i64 x = xs.first + ix * s.q;
            const i64 rx = rem - x * x;
            const ClassRange ys = class_range(isqrt(rx), s.r[7], s.q);
            for (i64 iy = 0; iy < ys.count; ++iy) {
                const i64 y = ys.first + iy * s.q;
                const i64 ry = rx - y * y;
                if (v[2] != 0) {
                    const i64 num = 1 - x * v[0] - y * v[1];
                    if (num % v[2] != 0) continue;
                    const i64 z = num / v[2];
                    if (z * z > ry || !s.in_class(z, 8)) continue;
                    emit(make3(rows, x, y, z));
                } else {
                    if (x * v[0] + y * v[1] != 1) continue;
                    const ClassRange zs = class_range(isqrt(ry), s.r[8], s.q);
                    for (i64 iz = 0; iz < zs.count; ++iz) emit(make3(rows, x, y, zs.first + iz * s.q));
                }
            }
        }
    });
}

i64 count_slice3(const Search& s, i64 g11, i64 g12, const simd::KernelTable& kt) {
    i64 total = 0;
    two_rows3(s, g11, g12, [&](const std::array<i64, 6>&, i64 n12, const std::array<i64, 3>& v) {
        // Solve for the coordinate with the largest cross-product weight; the
        // other two become the outer loop and the vector lanes.
        int k = 0;
        for (int i = 1; i < 3; ++i)
            if (std::abs(v[static_cast<std::size_t>(i)]) > std::abs(v[static_cast<std::size_t>(k)])) k = i;
        const int p = k == 0 ? 1 : 0;
        const int l = k == 2 ? 1 : 2;
        const auto up = static_cast<std::size_t>(p), ul = static_cast<std::size_t>(l), uk = static_cast<std::size_t>(k);
        const i64 rem = s.bound - n12;
        simd::RowQuery row;
        row.k1 = -v[ul];
        row.divisor = v[uk];
        row.budget = s.bound;
        row.step = s.q;
        row.modulus = s.q > 1 ? s.q : 0;
        row.residue = s.r[6 + uk];
        const ClassRange ps = class_range(isqrt(rem), s.r[6 + up], s.q);
        for (i64 ip = 0; ip < ps.count; ++ip) {
            const i64 xp = ps.first + ip * s.q;
            const ClassRange ls = class_range(isqrt(rem - xp * xp), s.r[6 + ul], s.q);
            if (ls.count == 0) continue;
            row.k0 = 1 - xp * v[up];
            row.base = n12 + xp * xp;
            row.lane0 = ls.first;
            row.lanes = ls.count;
            total += kt.count_row(row);
        }
    });
    return total;
}

template <class Emit>
void stream_prefix(const Search& s, const std::array<i64, 2>& prefix, Emit&& emit) {
    if (s.n == 2)
        stream_slice2(s, prefix[0], emit);
    else
        stream_slice3(s, prefix[0], prefix[1], emit);
}

void stream_sequential(const Search& s, const std::function<void(const IntegerMatrix&)>& visit) {
    for (const auto& prefix : outer_prefixes(s)) stream_prefix(s, prefix, visit);
}

i64 mul_checked(i64 a, i64 b) {
    i64 out = 0;
    if (__builtin_mul_overflow(a, b, &out)) fail(ErrorKind::budget_exceeded, "|SL_n(Z/qZ)| overflows 64 bits");
    return out;
}

}  // namespace

std::int64_t IntegerMatrix::determinant() const {
    const auto& e = entries;
    if (n == 2) return e[0] * e[3] - e[1] * e[2];
    return e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6]) + e[2] * (e[3] * e[7] - e[4] * e[6]);
}

double IntegerMatrix::norm() const { return std::sqrt(static_cast<double>(norm_sq)); }

IntegerMatrix IntegerMatrix::from_entries(int n, std::span<const std::int64_t> values) {
    if (n != 2 && n != 3) fail(ErrorKind::domain, "dimension must be 2 or 3");
    if (values.size() != static_cast<std::size_t>(n * n)) fail(ErrorKind::domain, "expected n^2 entries");
    IntegerMatrix m;
    m.n = n;
    for (std::size_t i = 0; i < values.size(); ++i) {
        m.entries[i] = values[i];
        m.norm_sq += values[i] * values[i];
    }
    return m;
}

IntegerMatrix IntegerMatrix::identity(int n) {
    IntegerMatrix m;
    m.n = n;
    for (int i = 0; i < n; ++i) m.entries[static_cast<std::size_t>(i * n + i)] = 1;
    m.norm_sq = n;
    return m;
}

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.n != b.n) fail(ErrorKind::domain, "dimension mismatch");
    const int n = a.n;
    std::array<std::int64_t, 9> out{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::int64_t acc = 0;
            for (int k = 0; k < n; ++k) acc += a.at(i, k) * b.at(k, j);
            out[static_cast<std::size_t>(i * n + j)] = acc;
        }
    return IntegerMatrix::from_entries(n, {out.data(), static_cast<std::size_t>(n * n)});
}

IntegerMatrix reduce_mod(const IntegerMatrix& g, std::int64_t q) {
    if (q < 1) fail(ErrorKind::domain, "level must be positive");
    std::array<std::int64_t, 9> out{};
    for (int k = 0; k < g.n * g.n; ++k) out[static_cast<std::size_t>(k)] = mod(g.entries[static_cast<std::size_t>(k)], q);
    return IntegerMatrix::from_entries(g.n, {out.data(), static_cast<std::size_t>(g.n * g.n)});
}

CongruenceLevel CongruenceLevel::of(std::int64_t q) {
    if (q < 1) fail(ErrorKind::domain, "level must be positive, got " + std::to_string(q));
    CongruenceLevel level;
    level.q = q;
    std::int64_t m = q;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e > 0) level.factorization.emplace_back(p, e);
    }
    if (m > 1) level.factorization.emplace_back(m, 1);
    return level;
}

bool CongruenceLevel::square_free() const {
    return std::all_of(factorization.begin(), factorization.end(), [](const auto& f) { return f.second == 1; });
}

std::int64_t norm_sq_bound(double R) {
    if (!(R >= 0.0)) return -1;
    return static_cast<std::int64_t>(std::floor(R * R * (1.0 + 1e-12)));
}

double radius_guard(int n) { return n == 2 ? 300.0 : 40.0; }

double predicted_work(int n, std::int64_t bound, std::int64_t q) {
    const double B = static_cast<double>(std::max<std::int64_t>(bound, 0));
    const double qd = static_cast<double>(q);
    const double pi = 3.14159265358979323846;
    if (n == 2) return 4.0 / 3.0 * pi * std::pow(B, 1.5) / (qd * qd * qd) + 1.0;
    return pi * pi * pi / 6.0 * B * B * B / std::pow(qd, 6) * (pi * B / (4.0 * qd * qd) + 1.0) + 1.0;
}

void enumerate_congruent(int n, double R, std::int64_t q, const IntegerMatrix& residue,
                         const std::function<void(const IntegerMatrix&)>& visit, const EnumerationOptions& opts) {
    const Search s = make_search(n, R, q, &residue);
    check_budget(s, opts);
    stream_sequential(s, visit);
}

void ball_enumerate(int n, double R, const std::function<void(const IntegerMatrix&)>& visit,
                    const EnumerationOptions& opts) {
    const Search s = make_search(n, R, 1, nullptr);
    check_budget(s, opts);
    stream_sequential(s, visit);
}

void ball_enumerate_parallel(int n, double R, const std::function<void(unsigned, const IntegerMatrix&)>& visit,
                             const EnumerationOptions& opts) {
    const Search s = make_search(n, R, 1, nullptr);
    check_budget(s, opts);
    const auto prefixes = outer_prefixes(s);
    parallel_for_strided(prefixes.size(), opts.workers, [&](unsigned w, std::size_t i) {
        stream_prefix(s, prefixes[i], [&](const IntegerMatrix& g) { visit(w, g); });
    });
}

std::int64_t ball_count(int n, double R, std::int64_t q, const std::optional<IntegerMatrix>& residue,
                        const EnumerationOptions& opts) {
    const Search s = make_search(n, R, q, residue ? &*residue : nullptr);
    check_budget(s, opts);
    const auto prefixes = outer_prefixes(s);
    const simd::KernelTable& kt = simd::active_kernels();
    const auto parts = parallel_map<i64>(prefixes.size(), opts.workers, [&](std::size_t i) {
        return n == 2 ? count_slice2(s, prefixes[i][0], kt) : count_slice3(s, prefixes[i][0], prefixes[i][1], kt);
    });
    return std::accumulate(parts.begin(), parts.end(), i64{0});
}

std::int64_t sl_count_mod(int n, const CongruenceLevel& q) {
    if (n != 2 && n != 3) fail(ErrorKind::domain, "dimension must be 2 or 3");
    if (!q.square_free()) fail(ErrorKind::domain, "level " + std::to_string(q.q) + " is not square-free");
    i64 total = 1;
    for (const auto& [p, e] : q.factorization) {
        (void)e;
        i64 factor = 1;
        for (int k = 0; k < n * (n - 1) / 2; ++k) factor = mul_checked(factor, p);
        i64 pk = p;
        for (int k = 2; k <= n; ++k) {
            pk = mul_checked(pk, p);
            factor = mul_checked(factor, pk - 1);
        }
        total = mul_checked(total, factor);
    }
    return total;
}

CountRecord gamma_q_count(int n, const CongruenceLevel& q, double R, double c_n, const EnumerationOptions& opts,
                          CountCache* cache) {
    CountRecord rec;
    rec.n = n;
    rec.q = q.q;
    rec.R = R;
    const i64 group = sl_count_mod(n, q);
    const i64 key = norm_sq_bound(R);
    std::optional<i64> cached;
    if (cache && q.q == 1) cached = cache->find(n, key);
    if (cached) {
        make_search(n, R, 1, nullptr);  // same guards as a fresh count
        rec.count = *cached;
    } else {
        rec.count = ball_count(n, R, q.q, std::nullopt, opts);
        if (cache && q.q == 1) cache->insert(n, key, rec.count);
    }
    const double k = n * (n - 1);
    rec.main_term = c_n * std::pow(R, k) / static_cast<double>(group);
    rec.sx_bound = std::pow(R, k) / std::pow(static_cast<double>(q.q), n * n - 1) + std::pow(R, k / 2.0);
    rec.ratio_sx = static_cast<double>(rec.count) / rec.sx_bound;
    return rec;
}

SarnakXueScan sarnak_xue_scan(int n, const std::vector<CongruenceLevel>& qs, const std::vector<double>& Rs, double c_n,
                              const EnumerationOptions& opts, CountCache* cache) {
    SarnakXueScan scan;
    for (const auto& q : qs)
        for (const double R : Rs) {
            scan.rows.push_back(gamma_q_count(n, q, R, c_n, opts, cache));
            scan.max_ratio = std::max(scan.max_ratio, scan.rows.back().ratio_sx);
        }
    return scan;
}

DrsFit drs_fit(int n, const std::vector<double>& Rs, const EnumerationOptions& opts, CountCache* cache) {
    if (Rs.size() < 4) fail(ErrorKind::ill_conditioned, "need at least 4 radii, got " + std::to_string(Rs.size()));
    DrsFit fit;
    fit.radii = Rs;
    const CongruenceLevel one = CongruenceLevel::of(1);
    for (const double R : Rs) fit.counts.push_back(gamma_q_count(n, one, R, 0.0, opts, cache).count);
    const double k = n * (n - 1);
    double sum_ratio = 0.0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < Rs.size(); ++i) {
        const double c = static_cast<double>(fit.counts[i]);
        if (c <= 0.0) fail(ErrorKind::ill_conditioned, "empty ball at R = " + std::to_string(Rs[i]));
        sum_ratio += c / std::pow(Rs[i], k);
        const double lx = std::log(Rs[i]), ly = std::log(c);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = static_cast<double>(Rs.size());
    const double den = m * sxx - sx * sx;
    if (!(std::abs(den) > 1e-12 * m * sxx)) fail(ErrorKind::ill_conditioned, "radii do not span a range");
    fit.c_n = sum_ratio / m;
    fit.exponent = (m * sxy - sx * sy) / den;
    fit.free_constant = std::exp((sy - fit.exponent * sx) / m);
    for (std::size_t i = 0; i < Rs.size(); ++i)
        fit.residuals.push_back(static_cast<double>(fit.counts[i]) / (fit.c_n * std::pow(Rs[i], k)) - 1.0);
    return fit;
}

}  // namespace eisl::lattice
