#pragma once

// Lists over the merge alphabet {1, 2, 3, 12, 23, 123} that index the
// kernels Pi^sigma_tau and the nested-circle integrals I^sigma_tau, plus the
// residue-bookkeeping rewrite rules for adjacent blocks.

#include <array>
#include <string>
#include <vector>

#include "lppcond/errors.hpp"
#include "lppcond/scaling.hpp"

namespace lppcond {

struct IndexList {
    std::vector<Sym> entries;

    // Counts per symbol, indexed by Sym.
    std::array<int, kNumSyms> type() const;
    // Multiplicities (n1, n2, n3): how many times digit i appears in total.
    std::array<int, 3> n() const;

    int size() const { return static_cast<int>(entries.size()); }
    std::string str() const;

    // Parse e.g. "3122", "(23)1", "3(12)", "(123)2".
    static IndexList parse(const std::string& s);

    bool operator==(const IndexList&) const = default;
};

// Whether the digit d (1-based) is contained in symbol s.
bool sym_contains(Sym s, int d);

// Merge of two symbols, when defined: {1,2}->12, {2,3}->23, {12,3}->123, {1,23}->123.
// Returns true and sets out on success.
bool sym_merge(Sym alpha, Sym beta, Sym& out);

// One term of a formal rewrite of adjacent blocks alpha^m beta^n at a given
// position. Coefficients follow A^{m,n}_i = i! C(m,i) C(n,i); the residue
// signs (-1)^# are not determined by the rules themselves and are exposed as
// unknown (sign_known = false) to be fixed by the identity verifier.
struct RewriteTerm {
    long long coeff = 1;
    bool sign_known = true;  // false => coefficient magnitude known, sign open
    IndexList list;
};

// Rewrite the maximal blocks alpha^m beta^n whose first block starts at
// position pos: swap rule for non-mergeable pairs, merge rule otherwise.
std::vector<RewriteTerm> list_rewrite(const IndexList& sigma, int pos);

} // namespace lppcond
