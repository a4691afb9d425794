#include "kroncalc/linalg.hpp"

#include <cstdlib>
#include <numeric>

#include "kroncalc/errors.hpp"

namespace kroncalc {

long dot(const IntVec& a, const IntVec& b) {
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const IntVec& a, const RatVec& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i]) s += a[i] * b[i];
    return s;
}

RatVec to_rat(const IntVec& v) {
    RatVec r;
    r.reserve(v.size());
    for (long x : v) r.emplace_back(x);
    return r;
}

Integer det(const IntMat& m) {
    size_t n = m.size();
    if (n == 0) return 1;
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    Integer prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

long det_long(const IntMat& m) {
    size_t n = m.size();
    if (n == 0) return 1;
    __int128 a[8][8];
    if (n > 8) {
        Integer d = det(m);
        if (!d.fits_slong_p()) throw Error(ErrorKind::CapExceeded, "determinant overflow");
        return d.get_si();
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    __int128 prev = 1;
    int sign = 1;
    const __int128 lim = (static_cast<__int128>(1) << 100);
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(a[k][j], a[p][j]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                __int128 v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = v / prev;
                if (a[i][j] > lim || a[i][j] < -lim) {
                    Integer d = det(m);
                    if (!d.fits_slong_p()) throw Error(ErrorKind::CapExceeded, "determinant overflow");
                    return d.get_si();
                }
            }
        }
        prev = a[k][k];
    }
    __int128 d = sign * a[n - 1][n - 1];
    if (d > LONG_MAX || d < LONG_MIN) throw Error(ErrorKind::CapExceeded, "determinant overflow");
    return static_cast<long>(d);
}

long rank(const RatMat& rows_in) {
    RatMat a = rows_in;
    if (a.empty()) return 0;
    size_t cols = a[0].size();
    long r = 0;
    for (size_t c = 0; c < cols && r < static_cast<long>(a.size()); ++c) {
        size_t p = r;
        while (p < a.size() && sgn(a[p][c]) == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[r], a[p]);
        for (size_t i = r + 1; i < a.size(); ++i) {
            if (sgn(a[i][c]) == 0) continue;
            Rational f = a[i][c] / a[r][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

long rank(const IntMat& rows) {
    RatMat a;
    for (const auto& r : rows) a.push_back(to_rat(r));
    return rank(a);
}

RatVec solve_rows(const IntMat& rows, const RatVec& v) {
    size_t n = rows.size();
    if (v.size() != n) throw Error(ErrorKind::SingularCoordinateChange, "solve: shape mismatch");
    // columns of the system matrix are the rows
    RatMat a(n, RatVec(n + 1));
    for (size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw Error(ErrorKind::SingularCoordinateChange, "solve: not square");
        for (size_t j = 0; j < n; ++j) a[j][i] = rows[i][j];
    }
    for (size_t j = 0; j < n; ++j) a[j][n] = v[j];
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && sgn(a[p][c]) == 0) ++p;
        if (p == n) throw Error(ErrorKind::SingularCoordinateChange, "solve: singular basis");
        std::swap(a[c], a[p]);
        for (size_t i = 0; i < n; ++i) {
            if (i == c || sgn(a[i][c]) == 0) continue;
            Rational f = a[i][c] / a[c][c];
            for (size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    RatVec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    return x;
}

IntMat adjugate(const IntMat& m) {
    size_t n = m.size();
    IntMat adj(n, IntVec(n, 0));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            IntMat minor;
            for (size_t a = 0; a < n; ++a) {
                if (a == i) continue;
                IntVec row;
                for (size_t b = 0; b < n; ++b)
                    if (b != j) row.push_back(m[a][b]);
                minor.push_back(row);
            }
            long c = det_long(minor);
            adj[j][i] = ((i + j) % 2 ? -c : c);
        }
    }
    return adj;
}

std::vector<Integer> smith_diagonal(const IntMat& m) {
    size_t rows = m.size();
    if (rows == 0) return {};
    size_t cols = m[0].size();
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];
    std::vector<Integer> diag;
    size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry in the remaining block as pivot
        size_t pi = rows, pj = cols;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) pi = i, pj = j;
        if (pi == rows) break;
        std::swap(a[t], a[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
                    clean = false;
                }
            }
            if (clean) {
                // pivot must divide the rest of the block
                for (size_t i = t + 1; i < rows && clean; ++i)
                    for (size_t j = t + 1; j < cols && clean; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (size_t c = t; c < cols; ++c) a[t][c] += a[i][c];
                            clean = false;
                        }
            }
        }
        diag.push_back(abs(a[t][t]));
        ++t;
    }
    return diag;
}

IntMat lattice_basis_of(const IntMat& gens) {
    if (gens.empty()) return {};
    size_t n = gens[0].size();
    std::vector<std::vector<Integer>> a;
    for (const auto& g : gens) {
        std::vector<Integer> row(g.begin(), g.end());
        a.push_back(row);
    }
    size_t r = 0;
    for (size_t c = 0; c < n && r < a.size(); ++c) {
        // gcd-combine rows r.. in column c
        while (true) {
            size_t p = a.size();
            for (size_t i = r; i < a.size(); ++i)
                if (a[i][c] != 0 && (p == a.size() || abs(a[i][c]) < abs(a[p][c]))) p = i;
            if (p == a.size()) break;
            std::swap(a[r], a[p]);
            bool done = true;
            for (size_t i = r + 1; i < a.size(); ++i) {
                if (a[i][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                for (size_t j = c; j < n; ++j) a[i][j] -= q * a[r][j];
                if (a[i][c] != 0) done = false;
            }
            if (done) break;
        }
        bool nonzero = false;
        for (size_t i = r; i < a.size(); ++i) nonzero |= a[i][c] != 0;
        if (a[r][c] != 0) ++r;
        (void)nonzero;
    }
    IntMat out;
    for (size_t i = 0; i < r; ++i) {
        IntVec row;
        for (size_t j = 0; j < n; ++j) {
            if (!a[i][j].fits_slong_p()) throw Error(ErrorKind::CapExceeded, "lattice basis entry overflow");
            row.push_back(a[i][j].get_si());
        }
        out.push_back(row);
    }
    return out;
}

IntMat column_compression(const IntMat& rows, long& rk) {
    size_t n = rows.empty() ? 0 : rows[0].size();
    std::vector<std::vector<Integer>> a;
    for (const auto& r : rows) a.emplace_back(r.begin(), r.end());
    std::vector<std::vector<Integer>> U(n, std::vector<Integer>(n, 0));
    for (size_t i = 0; i < n; ++i) U[i][i] = 1;
    auto col_op = [&](size_t dst, size_t src, const Integer& q) {  // col dst -= q col src
        for (auto& row : a) row[dst] -= q * row[src];
        for (auto& row : U) row[dst] -= q * row[src];
    };
    auto col_swap = [&](size_t x, size_t y) {
        for (auto& row : a) std::swap(row[x], row[y]);
        for (auto& row : U) std::swap(row[x], row[y]);
    };
    size_t c = 0;
    for (size_t i = 0; i < a.size() && c < n; ++i) {
        while (true) {
            size_t p = n;
            for (size_t j = c; j < n; ++j)
                if (a[i][j] != 0 && (p == n || abs(a[i][j]) < abs(a[i][p]))) p = j;
            if (p == n) break;
            col_swap(c, p);
            bool done = true;
            for (size_t j = c + 1; j < n; ++j) {
                if (a[i][j] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][j].get_mpz_t(), a[i][c].get_mpz_t());
                col_op(j, c, q);
                if (a[i][j] != 0) done = false;
            }
            if (done) break;
        }
        if (a[i][c] != 0) ++c;
    }
    rk = static_cast<long>(c);
    IntMat out(n, IntVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (!U[i][j].fits_slong_p()) throw Error(ErrorKind::CapExceeded, "unimodular transform overflow");
            out[i][j] = U[i][j].get_si();
        }
    return out;
}

IntVec make_primitive(IntVec v) {
    long g = 0;
    for (long x : v) g = std::gcd(g, std::labs(x));
    if (g == 0) return v;
    for (auto& x : v) x /= g;
    for (long x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

IntVec primitive_normal(const IntMat& rows, long n) {
    IntVec X(n);
    for (long i = 0; i < n; ++i) {
        IntMat sub;
        for (const auto& r : rows) {
            IntVec s;
            for (long j = 0; j < n; ++j)
                if (j != i) s.push_back(r[j]);
            sub.push_back(s);
        }
        long d = det_long(sub);
        X[i] = (i % 2) ? -d : d;
    }
    return make_primitive(X);
}

}  // namespace kroncalc
