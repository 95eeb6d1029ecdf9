#pragma once

// Coverage of SL_n(Z/qZ) by reductions of integer norm balls, and minimal lifts.

#include <cstdint>
#include <optional>
#include <vector>

#include "eisl/congruence_lattice.hpp"

namespace eisl::lifting {

using lattice::CongruenceLevel;
using lattice::IntegerMatrix;

/// An element of SL_n(Z/qZ): entries in [0, q), det == 1 mod q.
struct ResidueClass {
    int n = 2;
    std::int64_t q = 1;
    IntegerMatrix entries;

    /// Validates and reduces; throws domain if det != 1 mod q.
    static ResidueClass of(const IntegerMatrix& m, std::int64_t q);
};

struct CoverageRecord {
    int n = 2;
    std::int64_t q = 1;
    double R = 0.0;
    std::int64_t covered = 0;
    std::int64_t total = 0;
    double uncovered_fraction = 0.0;  // 1 - covered / total
};

struct LiftingOptions {
    lattice::EnumerationOptions enumeration;
    std::int64_t memory_cap = 10'000'000;  // max |SL_n(Z/qZ)|
};

/// Number of residues mod q realized by {||gamma|| <= R}.
CoverageRecord coverage(int n, const CongruenceLevel& q, double R, const LiftingOptions& opts = {});

struct LiftingScan {
    std::vector<CoverageRecord> rows;
    /// Slope of log(uncovered_fraction) against log q over rows with a
    /// nonzero fraction; NaN when fewer than two such rows.
    double decay_exponent = 0.0;
    std::size_t fitted_points = 0;
};

/// One coverage record per q at R = q^{1 + 1/n + epsilon}.
LiftingScan lifting_exponent_scan(int n, const std::vector<CongruenceLevel>& qs, double epsilon,
                                  const LiftingOptions& opts = {});

/// Minimal-norm member of the ball of radius R_max congruent to r; among equal
/// norms the lexicographically largest entry tuple wins.
std::optional<IntegerMatrix> minimal_lift(int n, const CongruenceLevel& q, const ResidueClass& r, double R_max,
                                          const LiftingOptions& opts = {});

struct MinimalLiftTable {
    int n = 2;
    std::int64_t q = 1;
    double R_max = 0.0;
    std::int64_t total = 0;             // |SL_n(Z/qZ)|
    std::vector<IntegerMatrix> lifts;   // one per residue reached, ordered by residue
};

/// minimal_lift for every residue at once, in one pass over the ball.
MinimalLiftTable minimal_lift_table(int n, const CongruenceLevel& q, double R_max, const LiftingOptions& opts = {});

/// Smallest radius (to `tolerance`) at which coverage is full, searched in [lo, hi].
double full_coverage_radius(int n, const CongruenceLevel& q, double lo, double hi, double tolerance = 1e-3,
                            const LiftingOptions& opts = {});

}  // namespace eisl::lifting
