#include "lppcond/lists.hpp"

#include <algorithm>

namespace lppcond {

std::array<int, kNumSyms> IndexList::type() const {
    std::array<int, kNumSyms> t{};
    for (Sym s : entries) ++t[static_cast<int>(s)];
    return t;
}

std::array<int, 3> IndexList::n() const {
    std::array<int, 3> out{};
    for (Sym s : entries)
        for (int d = 1; d <= 3; ++d)
            if (sym_contains(s, d)) ++out[d - 1];
    return out;
}

std::string IndexList::str() const {
    std::string s;
    for (Sym e : entries) {
        const std::string nm = sym_name(e);
        if (nm.size() > 1) s += "(" + nm + ")";
        else s += nm;
    }
    return s;
}

IndexList IndexList::parse(const std::string& s) {
    IndexList out;
    std::size_t i = 0;
    auto sym_of = [](const std::string& digits) -> Sym {
        if (digits == "1") return Sym::S1;
        if (digits == "2") return Sym::S2;
        if (digits == "3") return Sym::S3;
        if (digits == "12") return Sym::S12;
        if (digits == "23") return Sym::S23;
        if (digits == "123") return Sym::S123;
        throw RuleError("IndexList::parse: bad symbol '" + digits + "'");
    };
    while (i < s.size()) {
        if (s[i] == '(') {
            const std::size_t j = s.find(')', i);
            if (j == std::string::npos) throw RuleError("IndexList::parse: unbalanced '('");
            out.entries.push_back(sym_of(s.substr(i + 1, j - i - 1)));
            i = j + 1;
        } else if (s[i] >= '1' && s[i] <= '3') {
            out.entries.push_back(sym_of(s.substr(i, 1)));
            ++i;
        } else {
            throw RuleError("IndexList::parse: unexpected character");
        }
    }
    return out;
}

bool sym_contains(Sym s, int d) {
    switch (s) {
        case Sym::S1: return d == 1;
        case Sym::S2: return d == 2;
        case Sym::S3: return d == 3;
        case Sym::S12: return d == 1 || d == 2;
        case Sym::S23: return d == 2 || d == 3;
        case Sym::S123: return d >= 1 && d <= 3;
    }
    return false;
}

bool sym_merge(Sym alpha, Sym beta, Sym& out) {
    auto match = [&](Sym x, Sym y, Sym a, Sym b) {
        return (x == a && y == b) || (x == b && y == a);
    };
    if (match(alpha, beta, Sym::S1, Sym::S2)) { out = Sym::S12; return true; }
    if (match(alpha, beta, Sym::S2, Sym::S3)) { out = Sym::S23; return true; }
    if (match(alpha, beta, Sym::S12, Sym::S3)) { out = Sym::S123; return true; }
    if (match(alpha, beta, Sym::S1, Sym::S23)) { out = Sym::S123; return true; }
    return false;
}

namespace {
long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}
long long factorial(int n) {
    long long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}
} // namespace

std::vector<RewriteTerm> list_rewrite(const IndexList& sigma, int pos) {
    const int sz = sigma.size();
    if (pos < 0 || pos >= sz) throw RuleError("list_rewrite: position out of range");
    const Sym alpha = sigma.entries[pos];
    int m = 0, i = pos;
    while (i < sz && sigma.entries[i] == alpha) { ++m; ++i; }
    if (i >= sz) throw RuleError("list_rewrite: no adjacent block after position");
    const Sym beta = sigma.entries[i];
    int nn = 0;
    int j = i;
    while (j < sz && sigma.entries[j] == beta) { ++nn; ++j; }

    std::vector<RewriteTerm> out;
    Sym merged;
    if (!sym_merge(alpha, beta, merged)) {
        // Plain swap: alpha^m beta^n -> beta^n alpha^m, coefficient 1.
        RewriteTerm t;
        t.list.entries.assign(sigma.entries.begin(), sigma.entries.begin() + pos);
        t.list.entries.insert(t.list.entries.end(), nn, beta);
        t.list.entries.insert(t.list.entries.end(), m, alpha);
        t.list.entries.insert(t.list.entries.end(), sigma.entries.begin() + j, sigma.entries.end());
        out.push_back(std::move(t));
        return out;
    }
    // Merge rule: sum over i of (+/-) A^{m,n}_i beta^{n-i} (alpha beta)^i alpha^{m-i}.
    for (int k = 0; k <= std::min(m, nn); ++k) {
        RewriteTerm t;
        t.coeff = factorial(k) * binom(m, k) * binom(nn, k);
        t.sign_known = (k == 0); // the k = 0 term is the plain swap, sign +1
        t.list.entries.assign(sigma.entries.begin(), sigma.entries.begin() + pos);
        t.list.entries.insert(t.list.entries.end(), nn - k, beta);
        t.list.entries.insert(t.list.entries.end(), k, merged);
        t.list.entries.insert(t.list.entries.end(), m - k, alpha);
        t.list.entries.insert(t.list.entries.end(), sigma.entries.begin() + j, sigma.entries.end());
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace lppcond
