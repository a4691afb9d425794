#include "kroncalc/os_bases.hpp"

#include <algorithm>
#include <numeric>

#include "kroncalc/errors.hpp"

namespace kroncalc {

OSArrangement::OSArrangement(const ReducedSystem& sys, IntMat hyperplanes)
    : sys_(&sys), hyperplanes_(std::move(hyperplanes)) {
    side_.reserve(hyperplanes_.size());
    for (const auto& X : hyperplanes_) {
        std::vector<signed char> row;
        row.reserve(sys.vectors.size());
        for (const auto& v : sys.vectors) {
            long d = dot(X, v);
            row.push_back(static_cast<signed char>((d > 0) - (d < 0)));
        }
        side_.push_back(std::move(row));
    }
}

bool OSArrangement::flags_span(const std::vector<long>& chosen) const {
    IntMat rows;
    for (long i : chosen) rows.push_back(sys_->vectors[i]);
    return rank(rows) == sys_->rank;
}

void OSArrangement::recurse(long s, std::vector<long>& chosen, const std::vector<long>& idx,
                            const std::vector<int>* vsign, std::vector<OrderedBasis>& out) const {
    long r = sys_->rank;
    long alpha = idx.front();  // lowest vector left in the current flag
    chosen.push_back(alpha);
    if (s == r - 1 && vsign == nullptr) {
        if (flags_span(chosen)) out.push_back(chosen);
        chosen.pop_back();
        return;
    }
    for (size_t h = 0; h < hyperplanes_.size(); ++h) {
        const auto& side = side_[h];
        if (side[alpha] == 0) continue;
        bool ok = true;
        for (size_t j = 0; j + 1 < chosen.size() && ok; ++j) ok = side[chosen[j]] == 0;
        if (!ok) continue;
        // v and alpha on the same side: the coefficient of alpha is positive
        if (vsign && (*vsign)[h] != side[alpha]) continue;
        if (s == r - 1) {
            if (flags_span(chosen)) out.push_back(chosen);
            break;  // the last hyperplane is determined by the other basis vectors
        }
        std::vector<long> next;
        for (long i : idx)
            if (side[i] == 0) next.push_back(i);
        if (static_cast<long>(next.size()) < r - s - 1) continue;
        recurse(s + 1, chosen, next, vsign, out);
    }
    chosen.pop_back();
}

std::vector<OrderedBasis> OSArrangement::all() const {
    std::vector<OrderedBasis> out;
    if (sys_->vectors.empty()) return out;
    std::vector<long> idx(sys_->vectors.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<long> chosen;
    recurse(0, chosen, idx, nullptr, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<OrderedBasis> OSArrangement::adapted(const RatVec& v) const {
    std::vector<int> vs;
    for (const auto& X : hyperplanes_) vs.push_back(sgn(dot(X, v)));
    if (std::find(vs.begin(), vs.end(), 0) != vs.end()) {
        // a singular point outside the closed cone has no adapted bases at all
        bool inside = false;
        for (const auto& b : all()) {
            RatVec c = cone_coefficients(*sys_, b, v);
            if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return sgn(x) >= 0; })) {
                inside = true;
                break;
            }
        }
        if (!inside) return {};
        tope_of(v, hyperplanes_);  // throws NotRegular
    }
    std::vector<OrderedBasis> out;
    if (sys_->vectors.empty()) return out;
    std::vector<long> idx(sys_->vectors.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<long> chosen;
    recurse(0, chosen, idx, &vs, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<OrderedBasis> os_bases(const ReducedSystem& sys, const IntMat& hyperplanes) {
    return OSArrangement(sys, hyperplanes).all();
}

std::vector<OrderedBasis> adapted_os_bases(const ReducedSystem& sys, const RatVec& v, const IntMat& hyperplanes) {
    return OSArrangement(sys, hyperplanes).adapted(v);
}

std::vector<OrderedBasis> os_bases_bruteforce(const ReducedSystem& sys) {
    long n = static_cast<long>(sys.vectors.size());
    long r = sys.rank;
    std::vector<OrderedBasis> out;
    std::vector<long> S(r);
    std::iota(S.begin(), S.end(), 0);
    if (r > n) return out;
    while (true) {
        IntMat B;
        for (long i : S) B.push_back(sys.vectors[i]);
        if (rank(B) == r) {
            bool ok = true;
            for (long l = 0; l < r && ok; ++l) {
                IntMat tail(B.begin() + l, B.end());
                for (long j = 0; j < S[l] && ok; ++j) {
                    IntMat t = tail;
                    t.push_back(sys.vectors[j]);
                    if (rank(t) < static_cast<long>(t.size())) ok = false;
                }
            }
            if (ok) out.push_back(S);
        }
        long i = r - 1;
        while (i >= 0 && S[i] == n - r + i) --i;
        if (i < 0) break;
        ++S[i];
        for (long j = i + 1; j < r; ++j) S[j] = S[j - 1] + 1;
    }
    return out;
}

RatVec cone_coefficients(const ReducedSystem& sys, const OrderedBasis& b, const RatVec& v) {
    IntMat B;
    for (long i : b) B.push_back(sys.vectors[i]);
    return solve_rows(B, v);
}

}  // namespace kroncalc
