#pragma once

// Exhaustive enumeration of SL_n(Z) (n = 2, 3) in Frobenius-norm balls and
// counting in principal congruence subgroups Gamma(q).

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace eisl::lattice {

class CountCache;

/// Integer n x n matrix, row-major, n in {2, 3}. Unused trailing entries are zero.
struct IntegerMatrix {
    int n = 2;
    std::array<std::int64_t, 9> entries{};
    std::int64_t norm_sq = 0;

    std::int64_t at(int i, int j) const { return entries[static_cast<std::size_t>(i * n + j)]; }
    std::int64_t determinant() const;
    double norm() const;
    std::span<const std::int64_t> values() const { return {entries.data(), static_cast<std::size_t>(n * n)}; }

    static IntegerMatrix from_entries(int n, std::span<const std::int64_t> values);
    static IntegerMatrix identity(int n);

    friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
        return a.n == b.n && a.entries == b.entries;
    }
};

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b);

/// Entry-wise reduction into [0, q).
IntegerMatrix reduce_mod(const IntegerMatrix& g, std::int64_t q);

struct CongruenceLevel {
    std::int64_t q = 1;
    std::vector<std::pair<std::int64_t, int>> factorization;  // (prime, exponent)

    static CongruenceLevel of(std::int64_t q);
    bool square_free() const;
};

/// Largest integer norm^2 admitted by the real radius R (robust to R = sqrt(k) rounding).
std::int64_t norm_sq_bound(double R);

struct EnumerationOptions {
    unsigned workers = 0;
    /// Cap on predicted inner-loop work; exceeding it raises budget_exceeded.
    double max_work = 2e10;
};

/// Desk-scale radius guards: R <= 300 for n = 2, R <= 40 for n = 3.
double radius_guard(int n);

/// Predicted number of inner-loop lane evaluations for the search.
double predicted_work(int n, std::int64_t bound, std::int64_t q);

/// Streams every gamma in SL_n(Z) with ||gamma|| <= R, once each, in
/// lexicographic order of the entries.
void ball_enumerate(int n, double R, const std::function<void(const IntegerMatrix&)>& visit,
                    const EnumerationOptions& opts = {});

/// Streams the matrices of the ball congruent to `residue` mod q (entries in
/// [0, q)), in lexicographic order. q = 1 streams the whole ball.
void enumerate_congruent(int n, double R, std::int64_t q, const IntegerMatrix& residue,
                         const std::function<void(const IntegerMatrix&)>& visit, const EnumerationOptions& opts = {});

/// Parallel streaming of the ball; visit(worker, gamma) sees each matrix once
/// on some worker. Order within a worker is lexicographic.
void ball_enumerate_parallel(int n, double R, const std::function<void(unsigned, const IntegerMatrix&)>& visit,
                             const EnumerationOptions& opts = {});

/// #{gamma in SL_n(Z): ||gamma|| <= R, gamma == residue mod q}, using the
/// vectorized row kernels. residue = nullopt means the identity class.
std::int64_t ball_count(int n, double R, std::int64_t q = 1, const std::optional<IntegerMatrix>& residue = std::nullopt,
                        const EnumerationOptions& opts = {});

/// |SL_n(Z/qZ)| for square-free q; exact, overflow-checked.
std::int64_t sl_count_mod(int n, const CongruenceLevel& q);

struct CountRecord {
    int n = 2;
    std::int64_t q = 1;
    double R = 0.0;
    std::int64_t count = 0;
    double main_term = 0.0;  // c_n R^{n(n-1)} / |SL_n(Z/qZ)|
    double sx_bound = 0.0;   // R^{n(n-1)} / q^{n^2-1} + R^{n(n-1)/2}
    double ratio_sx = 0.0;   // count / sx_bound
};

/// Count in Gamma(q) with the bookkeeping columns filled in. c_n is the fitted
/// ball constant used for main_term.
CountRecord gamma_q_count(int n, const CongruenceLevel& q, double R, double c_n, const EnumerationOptions& opts = {},
                          CountCache* cache = nullptr);

struct SarnakXueScan {
    std::vector<CountRecord> rows;  // q-major, R-minor
    double max_ratio = 0.0;
};

SarnakXueScan sarnak_xue_scan(int n, const std::vector<CongruenceLevel>& qs, const std::vector<double>& Rs, double c_n,
                              const EnumerationOptions& opts = {}, CountCache* cache = nullptr);

struct DrsFit {
    double c_n = 0.0;               // fixed exponent n(n-1), mean of count / R^{n(n-1)}
    double exponent = 0.0;          // free exponent from the log-log regression
    double free_constant = 0.0;     // prefactor of the free fit
    std::vector<double> radii;
    std::vector<std::int64_t> counts;
    std::vector<double> residuals;  // count / (c_n R^{n(n-1)}) - 1
};

/// Fits the q = 1 ball counts. Needs at least 4 radii.
DrsFit drs_fit(int n, const std::vector<double>& Rs, const EnumerationOptions& opts = {}, CountCache* cache = nullptr);

}  // namespace eisl::lattice
