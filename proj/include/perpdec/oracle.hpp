// Independent brute-force oracles certifying the structure algorithms on
// small instances; exhaustive-or-refuse by an explicit budget.
#pragma once

#include "perpdec/star_structure.hpp"

namespace perpdec {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct OracleBudget {
    double max_points = 19683;  // 3^9: enumeration only below this count
};

// all e in span(sym) with e^2 = e (includes 0 and 1)
std::vector<Mat> enumerate_idempotents(const std::vector<Mat>& sym, int ambient, i64 p,
                                       const OracleBudget& budget = {});

// true iff the (mod rad) quotient has no nonzero x with x * A * x = 0
struct SemisimplicityVerdict {
    bool semisimple = false;
    bool exhaustive = false;  // false means a sampled verdict, never a certificate
};
SemisimplicityVerdict semisimplicity_oracle(const std::vector<Mat>& quotient_basis, const ModRad& mod,
                                            const OracleBudget& budget = {}, u64 seed = 0);

// exhaustive isometry and pseudo-isometry counts of a diagonal form
struct IsometryCounts {
    long long isometries = 0;
    long long pseudo_isometries = 0;
};
IsometryCounts brute_isometry_group_order(int n, i64 q, Disc disc);

}  // namespace perpdec
