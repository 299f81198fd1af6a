#pragma once
// Independent interval-module combinatorics for linear A_n (1 -> ... -> n),
// used as an oracle against the complex-based engines. Nothing here touches
// complexes: homs and extensions come from the interval formulas, and the
// orbit functor F = tau^{-1}[d] acts on (a, b, s) labels by formula.

#include <vector>

#include "dext/hereditary.hpp"

namespace dext::testing {

// dim Hom(M[a,b], M[c,e]): nonzero iff c <= a <= e <= b.
inline int oracle_hom(int a, int b, int c, int e) { return (c <= a && a <= e && e <= b) ? 1 : 0; }

// dim Ext^1(X, Y) = dim Hom(Y, tau X), tau M[a,b] = M[a+1,b+1] for b < n.
inline int oracle_ext1(int n, int a, int b, int c, int e) {
    if (b == n) return 0;
    return oracle_hom(c, e, a + 1, b + 1);
}

// dim Hom_{D^b}(M[a,b][s], M[c,e][t][p]).
inline int oracle_db(int n, const StalkKey& x, const StalkKey& y, int p) {
    const int k = y.s + p - x.s;
    if (k == 0) return oracle_hom(x.a, x.b, y.a, y.b);
    if (k == 1) return oracle_ext1(n, x.a, x.b, y.a, y.b);
    return 0;
}

// tau and tau^{-1} on stalk labels: the projective P_a = [a,n] goes to
// I_a[-1] = [1,a][-1]; the injective I_b = [1,b] goes to P_b[1].
inline StalkKey oracle_tau(int n, StalkKey k) {
    if (k.b < n) return {k.a + 1, k.b + 1, k.s};
    return {1, k.a, k.s - 1};
}
inline StalkKey oracle_tau_inverse(int n, StalkKey k) {
    if (k.a > 1) return {k.a - 1, k.b - 1, k.s};
    return {k.b, n, k.s + 1};
}

inline StalkKey oracle_f(int n, int d, StalkKey k) {
    StalkKey t = oracle_tau_inverse(n, k);
    t.s += d;
    return t;
}
inline StalkKey oracle_f_inverse(int n, int d, StalkKey k) {
    k.s -= d;
    return oracle_tau(n, k);
}

// dim Hom_C(X, Y[p]) in the orbit category, summing over |m| <= range.
inline int oracle_orbit_hom(int n, int d, const StalkKey& x, const StalkKey& y, int p, int range = 10) {
    int total = oracle_db(n, x, y, p);
    StalkKey up = y, down = y;
    for (int m = 1; m <= range; ++m) {
        up = oracle_f(n, d, up);
        down = oracle_f_inverse(n, d, down);
        total += oracle_db(n, x, up, p) + oracle_db(n, x, down, p);
    }
    return total;
}

inline std::vector<StalkKey> interval_stalks(int n, int max_shift) {
    std::vector<StalkKey> out;
    for (int s = 0; s <= max_shift; ++s)
        for (int a = 1; a <= n; ++a)
            for (int b = a; b <= n; ++b) out.push_back({a, b, s});
    return out;
}

}  // namespace dext::testing
