#include "perpdec/oracle.hpp"

#include "perpdec/bilinear.hpp"
#include "perpdec/rng.hpp"

namespace perpdec {

std::vector<Mat> enumerate_idempotents(const std::vector<Mat>& sym, int ambient, i64 p,
                                       const OracleBudget& budget) {
    int d = static_cast<int>(sym.size());
    double total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<double>(p);
    if (total > budget.max_points) throw BudgetExceeded("enumerate_idempotents: budget bound hit");
    std::vector<Mat> out;
    std::vector<i64> co(d, 0);
    for (;;) {
        Mat e(ambient, ambient, p);
        for (int i = 0; i < d; ++i)
            if (co[i] != 0) e = e + sym[i].scaled(co[i]);
        if (e * e == e) out.push_back(e);
        int i = 0;
        while (i < d && ++co[i] == p) co[i++] = 0;
        if (i == d) break;
    }
    return out;
}

SemisimplicityVerdict semisimplicity_oracle(const std::vector<Mat>& quotient_basis, const ModRad& mod,
                                            const OracleBudget& budget, u64 seed) {
    SemisimplicityVerdict v;
    int d = static_cast<int>(quotient_basis.size());
    i64 p = mod.p();
    auto zero_divisor = [&](const Mat& x) {
        if (mod.is_zero(x)) return false;
        for (const Mat& b : quotient_basis)
            if (!mod.is_zero(x * b * x)) return false;
        return true;
    };
    double total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<double>(p);
    if (total <= budget.max_points) {
        v.exhaustive = true;
        std::vector<i64> co(d, 0);
        for (;;) {
            Mat x(mod.m(), mod.m(), p);
            for (int i = 0; i < d; ++i)
                if (co[i] != 0) x = x + quotient_basis[i].scaled(co[i]);
            if (zero_divisor(x)) {
                v.semisimple = false;
                return v;
            }
            int i = 0;
            while (i < d && ++co[i] == p) co[i++] = 0;
            if (i == d) break;
        }
        v.semisimple = true;
        return v;
    }
    v.exhaustive = false;
    Rng rng(seed);
    for (int t = 0; t < 4096; ++t) {
        Mat x(mod.m(), mod.m(), p);
        for (const Mat& b : quotient_basis) x = x + b.scaled(static_cast<i64>(rng.below(static_cast<u64>(p))));
        if (zero_divisor(x)) {
            v.semisimple = false;
            return v;
        }
    }
    v.semisimple = true;  // sampled, not a certificate
    return v;
}

IsometryCounts brute_isometry_group_order(int n, i64 q, Disc disc) {
    if (n > 2 || q > 5) throw BudgetExceeded("brute_isometry_group_order: size guard (n <= 2, q <= 5)");
    FieldSpec{q}.validate();
    Mat D = dot_form(n, q, disc).grams[0];
    IsometryCounts out;
    int cells = n * n;
    std::vector<i64> co(cells, 0);
    for (;;) {
        Mat A(n, n, q);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A.at(i, j) = co[i * n + j];
        if (determinant(A) != 0) {
            Mat form = A * D * A.transpose();
            if (form == D) ++out.isometries;
            for (i64 s = 1; s < q; ++s)
                if (form == D.scaled(s)) {
                    ++out.pseudo_isometries;
                    break;
                }
        }
        int i = 0;
        while (i < cells && ++co[i] == q) co[i++] = 0;
        if (i == cells) break;
    }
    return out;
}

}  // namespace perpdec
