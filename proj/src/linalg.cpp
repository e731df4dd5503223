#include "calaw/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace calaw {

namespace {

// floor quotient, so remainders land in [0, |b|)
BigInt fdiv(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

void row_axpy(IntVec& target, const BigInt& c, const IntVec& src) {
    for (std::size_t k = 0; k < target.size(); ++k) target[k] -= c * src[k];
}

}  // namespace

int rref(RatMatrix& m) {
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[r], m[pivot]);
        Rational inv = m[r][c];
        for (std::size_t k = c; k < cols; ++k) m[r][k] /= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        ++r;
    }
    m.resize(r);
    return static_cast<int>(r);
}

int rank(RatMatrix m) { return rref(m); }

RatMatrix nullspace(const RatMatrix& m, int ncols) {
    RatMatrix red = m;
    for (const auto& row : red)
        if (static_cast<int>(row.size()) != ncols)
            throw std::invalid_argument("nullspace: row length mismatch");
    rref(red);

    std::vector<int> pivot_col;
    std::vector<bool> is_pivot(ncols, false);
    for (const auto& row : red) {
        int c = 0;
        while (c < ncols && row[c] == 0) ++c;
        pivot_col.push_back(c);
        if (c < ncols) is_pivot[c] = true;
    }

    RatMatrix basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        RatVec v(ncols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < red.size(); ++i)
            if (pivot_col[i] < ncols) v[pivot_col[i]] = -red[i][f];
        basis.push_back(std::move(v));
    }
    rref(basis);
    return basis;
}

bool in_row_span(const RatMatrix& basis, const RatVec& v) {
    RatMatrix m = basis;
    int r0 = rref(m);
    m.push_back(v);
    return rref(m) == r0;
}

std::pair<IntMatrix, IntMatrix> hnf_with_transform(IntMatrix a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    IntMatrix t(rows, IntVec(rows, 0));
    for (std::size_t i = 0; i < rows; ++i) t[i][i] = 1;

    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // euclidean reduction within the column until one nonzero survives
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (a[i][c] == 0) continue;
                if (best == rows ||
                    mpz_cmpabs(a[i][c].get_mpz_t(), a[best][c].get_mpz_t()) < 0)
                    best = i;
            }
            if (best == rows) break;  // column clear below r
            std::swap(a[r], a[best]);
            std::swap(t[r], t[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a[i][c] == 0) continue;
                BigInt q = fdiv(a[i][c], a[r][c]);
                row_axpy(a[i], q, a[r]);
                row_axpy(t[i], q, t[r]);
                if (a[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (a[r][c] == 0) continue;
        if (a[r][c] < 0) {
            for (auto& x : a[r]) x = -x;
            for (auto& x : t[r]) x = -x;
        }
        for (std::size_t i = 0; i < r; ++i) {
            BigInt q = fdiv(a[i][c], a[r][c]);
            if (q != 0) {
                row_axpy(a[i], q, a[r]);
                row_axpy(t[i], q, t[r]);
            }
        }
        ++r;
    }
    return {std::move(a), std::move(t)};
}

IntMatrix hnf(IntMatrix a) {
    auto [h, t] = hnf_with_transform(std::move(a));
    IntMatrix out;
    for (auto& row : h) {
        bool nz = false;
        for (const auto& x : row)
            if (x != 0) {
                nz = true;
                break;
            }
        if (nz) out.push_back(std::move(row));
    }
    return out;
}

IntMatrix integer_kernel(const IntMatrix& m, int ncols) {
    // rows of T whose image row vanishes span the kernel of the column map
    IntMatrix cols_as_rows(ncols);
    for (int j = 0; j < ncols; ++j) {
        IntVec row(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) row[i] = m[i][j];
        cols_as_rows[j] = std::move(row);
    }
    auto [h, t] = hnf_with_transform(std::move(cols_as_rows));
    IntMatrix kernel;
    for (std::size_t i = 0; i < h.size(); ++i) {
        bool zero = true;
        for (const auto& x : h[i])
            if (x != 0) {
                zero = false;
                break;
            }
        if (zero) kernel.push_back(t[i]);
    }
    return hnf(std::move(kernel));
}

IntMatrix mod_solution_generators(const IntMatrix& m, int ncols, std::int64_t mod) {
    if (mod < 1) throw std::invalid_argument("modulus must be positive");
    // solutions of M x = 0 (mod mod) are x-parts of the integer kernel of
    // [M | mod*I]; the y-part is determined, so projection is faithful
    const std::size_t rows = m.size();
    IntMatrix ext(rows, IntVec(ncols + rows, 0));
    for (std::size_t i = 0; i < rows; ++i) {
        for (int j = 0; j < ncols; ++j) ext[i][j] = m[i][j];
        ext[i][ncols + i] = mod;
    }
    IntMatrix kernel = integer_kernel(ext, ncols + static_cast<int>(rows));
    IntMatrix projected;
    for (const auto& row : kernel)
        projected.emplace_back(row.begin(), row.begin() + ncols);
    // the lattice always contains mod*Z^ncols; make that explicit so the
    // HNF below is a full-rank canonical basis even when m has no rows
    for (int j = 0; j < ncols; ++j) {
        IntVec row(ncols, 0);
        row[j] = mod;
        projected.push_back(std::move(row));
    }
    IntMatrix basis = hnf(std::move(projected));
    IntMatrix out;
    for (auto& row : basis) {
        bool nonzero = false;
        for (auto& x : row) {
            x %= mod;
            if (x < 0) x += mod;
            if (x != 0) nonzero = true;
        }
        if (nonzero) out.push_back(std::move(row));
    }
    return out;
}

std::optional<IntVec> lattice_coordinates(const IntMatrix& hnf_basis, const IntVec& v) {
    IntVec residue = v;
    IntVec coords(hnf_basis.size(), 0);
    for (std::size_t i = 0; i < hnf_basis.size(); ++i) {
        const IntVec& row = hnf_basis[i];
        std::size_t p = 0;
        while (p < row.size() && row[p] == 0) ++p;
        if (p == row.size()) throw std::invalid_argument("zero row in lattice basis");
        if (residue[p] % row[p] != 0) {
            // pivot does not divide: might still clear via later rows? no:
            // echelon structure makes this definitive
            return std::nullopt;
        }
        BigInt q = residue[p] / row[p];
        coords[i] = q;
        for (std::size_t k = 0; k < residue.size(); ++k) residue[k] -= q * row[k];
    }
    for (const auto& x : residue)
        if (x != 0) return std::nullopt;
    return coords;
}

}  // namespace calaw
