#include "cliffring/linalg.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <set>

namespace cliffring {

using BigInt = boost::multiprecision::cpp_int;

// ------------------------------------------------------------------- vectors

Vec zero_vec(const Ring& r, size_t n) { return Vec(n, r.zero()); }

Vec unit_vec(const Ring& r, size_t n, size_t i) {
    Vec v = zero_vec(r, n);
    v[i] = r.one();
    return v;
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("vector length mismatch");
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("vector length mismatch");
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vec scale(const RingElement& a, const Vec& v) {
    Vec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = a * v[i];
    return out;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const RingElement& a) { return a.is_zero(); });
}

std::string to_string(const Vec& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].to_string();
    }
    return out + "]";
}

bool vec_less(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

size_t VecHash::operator()(const Vec& v) const {
    size_t h = v.size();
    for (auto& a : v)
        for (int i = 0; i < a.ring().width(); ++i)
            h = h * 1000003u ^ static_cast<size_t>(a.coord(i) + 0x9e3779b97f4a7c15ULL);
    return h;
}

bool VecEq::operator()(const Vec& a, const Vec& b) const { return a == b; }

// -------------------------------------------------------------------- matrix

Matrix::Matrix(const Ring& r, size_t rows, size_t cols)
    : ring_(&r), rows_(rows), cols_(cols), data_(rows * cols, r.zero()) {}

Matrix Matrix::identity(const Ring& r, size_t n) {
    Matrix m(r, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = r.one();
    return m;
}

Matrix Matrix::from_columns(const Ring& r, size_t rows, const std::vector<Vec>& cols) {
    Matrix m(r, rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw Error("column length mismatch");
        for (size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

Matrix Matrix::from_ints(const Ring& r, const std::vector<std::vector<int64_t>>& rows) {
    size_t nc = rows.empty() ? 0 : rows[0].size();
    Matrix m(r, rows.size(), nc);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != nc) throw Error("ragged matrix");
        for (size_t j = 0; j < nc; ++j) m.at(i, j) = r.from_int(rows[i][j]);
    }
    return m;
}

Vec Matrix::column(size_t j) const {
    Vec v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

Vec Matrix::row(size_t i) const { return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

Matrix Matrix::operator*(const Matrix& b) const {
    if (cols_ != b.rows_) throw Error("matrix shape mismatch");
    Matrix out(*ring_, rows_, b.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const RingElement& a = at(i, k);
            if (a.is_zero()) continue;
            for (size_t j = 0; j < b.cols_; ++j) out.at(i, j) += a * b.at(k, j);
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw Error("matrix shape mismatch");
    Matrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw Error("matrix shape mismatch");
    Matrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
}

Vec Matrix::operator*(const Vec& v) const {
    if (v.size() != cols_) throw Error("matrix-vector shape mismatch");
    Vec out = zero_vec(*ring_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(*ring_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

bool Matrix::operator==(const Matrix& b) const {
    return rows_ == b.rows_ && cols_ == b.cols_ && data_ == b.data_;
}

bool Matrix::operator<(const Matrix& b) const {
    // Column-major lexicographic order, the enumeration order.
    for (size_t j = 0; j < cols_; ++j)
        for (size_t i = 0; i < rows_; ++i)
            if (at(i, j) != b.at(i, j)) return at(i, j) < b.at(i, j);
    return false;
}

bool Matrix::is_identity() const { return rows_ == cols_ && *this == identity(*ring_, rows_); }

std::vector<std::vector<std::string>> Matrix::to_strings() const {
    std::vector<std::vector<std::string>> out(rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) out[i].push_back(at(i, j).to_string());
    return out;
}

std::string Matrix::to_string() const {
    std::string out = "[";
    for (size_t i = 0; i < rows_; ++i) {
        if (i) out += ", ";
        out += cliffring::to_string(row(i));
    }
    return out + "]";
}

// ----------------------------------------------------- Smith elimination core

namespace {

template <class Int>
Int iabs(const Int& a) {
    return a < 0 ? Int(-a) : a;
}

// s*a + u*b = g with g = gcd(a, b) >= 0.
template <class Int>
void ext_gcd(Int a, Int b, Int& g, Int& s, Int& u) {
    Int r0 = a, r1 = b, s0 = 1, s1 = 0, u0 = 0, u1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
        t = u0 - q * u1;
        u0 = u1;
        u1 = t;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        u0 = -u0;
    }
    g = r0;
    s = s0;
    u = u0;
}

// Diagonalises A over ℤ (N = 0) or ℤ/N with unimodular P, Q: P·A·Q = D.
// Entries over ℤ/N are kept in [0, N); N must stay below 2^31 for int64.
template <class Int>
class Smith {
public:
    Smith(std::vector<std::vector<Int>> a, Int n) : A(std::move(a)), N(n) {
        m = A.size();
        k = m ? A[0].size() : 0;
        P.assign(m, std::vector<Int>(m, Int(0)));
        Q.assign(k, std::vector<Int>(k, Int(0)));
        for (size_t i = 0; i < m; ++i) P[i][i] = 1;
        for (size_t j = 0; j < k; ++j) Q[j][j] = 1;
        for (auto& row : A)
            for (auto& x : row) norm(x);
        run();
    }

    std::vector<std::vector<Int>> A, P, Q;
    size_t m = 0, k = 0;
    Int N;

    Int diag(size_t t) const { return t < m && t < k ? A[t][t] : Int(0); }

    void norm(Int& x) const {
        if (N != 0) {
            x %= N;
            if (x < 0) x += N;
        }
    }

    Int comb(const Int& s, const Int& a, const Int& u, const Int& b) const {
        if constexpr (std::is_same_v<Int, int64_t>) {
            __int128 v = static_cast<__int128>(s) * a + static_cast<__int128>(u) * b;
            auto r = static_cast<int64_t>(v % N);
            return r < 0 ? r + N : r;
        } else {
            Int v = s * a + u * b;
            norm(v);
            return v;
        }
    }

    // Combine rows t and i so that A[i][col] becomes 0.
    void row_op(std::vector<std::vector<Int>>& M, size_t t, size_t i, const Int& s, const Int& u, const Int& v,
                const Int& w) {
        for (size_t j = 0; j < M[t].size(); ++j) {
            Int a = M[t][j], b = M[i][j];
            M[t][j] = comb(s, a, u, b);
            M[i][j] = comb(v, a, w, b);
        }
    }
    void col_op(std::vector<std::vector<Int>>& M, size_t t, size_t j, const Int& s, const Int& u, const Int& v,
                const Int& w) {
        for (size_t i = 0; i < M.size(); ++i) {
            Int a = M[i][t], b = M[i][j];
            M[i][t] = comb(s, a, u, b);
            M[i][j] = comb(v, a, w, b);
        }
    }

    void coefficients(const Int& a, const Int& b, Int& s, Int& u, Int& v, Int& w) const {
        if (a != 0 && b % a == 0) {
            s = 1;
            u = 0;
            v = -(b / a);
            w = 1;
        } else {
            Int g;
            ext_gcd(a, b, g, s, u);
            v = -(b / g);
            w = a / g;
        }
        if (N != 0) {
            norm(s);
            norm(u);
            norm(v);
            norm(w);
        }
    }

    void run() {
        for (size_t t = 0; t < std::min(m, k); ++t) {
            size_t pi = m, pj = k;
            Int best = 0;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < k; ++j)
                    if (A[i][j] != 0 && (pi == m || iabs(A[i][j]) < best)) {
                        pi = i;
                        pj = j;
                        best = iabs(A[i][j]);
                    }
            if (pi == m) return;
            std::swap(A[t], A[pi]);
            std::swap(P[t], P[pi]);
            for (auto& row : A) std::swap(row[t], row[pj]);
            for (auto& row : Q) std::swap(row[t], row[pj]);
            while (true) {
                for (size_t i = t + 1; i < m; ++i) {
                    if (A[i][t] == 0) continue;
                    Int s, u, v, w;
                    coefficients(A[t][t], A[i][t], s, u, v, w);
                    row_op(A, t, i, s, u, v, w);
                    row_op(P, t, i, s, u, v, w);
                }
                for (size_t j = t + 1; j < k; ++j) {
                    if (A[t][j] == 0) continue;
                    Int s, u, v, w;
                    coefficients(A[t][t], A[t][j], s, u, v, w);
                    col_op(A, t, j, s, u, v, w);
                    col_op(Q, t, j, s, u, v, w);
                }
                bool clean = true;
                for (size_t i = t + 1; i < m; ++i)
                    if (A[i][t] != 0) clean = false;
                if (clean) break;
            }
        }
    }

    // Solves d z = c; returns false when impossible.
    bool solve_scalar(const Int& d, const Int& c, Int& z) const {
        if (N == 0) {
            if (d == 0) {
                z = 0;
                return c == 0;
            }
            if (c % d != 0) return false;
            z = c / d;
            return true;
        }
        Int g, s, u;
        ext_gcd(d, N, g, s, u);  // s*d ≡ g mod N
        if (c % g != 0) return false;
        Int ng = N / g;
        if (ng == 1) {
            z = 0;
            return true;
        }
        Int sr = s % ng;
        if (sr < 0) sr += ng;
        z = comb(sr, c / g, Int(0), Int(0));
        z %= ng;
        return true;
    }

    std::optional<std::vector<Int>> solve(std::vector<Int> b) const {
        std::vector<Int> c(m, Int(0));
        for (size_t i = 0; i < m; ++i) {
            Int acc = 0;
            for (size_t j = 0; j < m; ++j) {
                if (P[i][j] == 0 || b[j] == 0) continue;
                acc = N != 0 ? comb(Int(1), acc, P[i][j], b[j]) : acc + P[i][j] * b[j];
            }
            if (N != 0) norm(acc);
            c[i] = acc;
        }
        std::vector<Int> z(k, Int(0));
        for (size_t i = 0; i < m; ++i) {
            Int zi;
            if (!solve_scalar(diag(i), c[i], zi)) return std::nullopt;
            if (i < k) z[i] = zi;
        }
        std::vector<Int> y(k, Int(0));
        for (size_t i = 0; i < k; ++i) {
            Int acc = 0;
            for (size_t j = 0; j < k; ++j) {
                if (Q[i][j] == 0 || z[j] == 0) continue;
                acc = N != 0 ? comb(Int(1), acc, Q[i][j], z[j]) : acc + Q[i][j] * z[j];
            }
            y[i] = acc;
        }
        return y;
    }

    std::vector<std::vector<Int>> kernel() const {
        std::vector<std::vector<Int>> out;
        for (size_t t = 0; t < k; ++t) {
            Int mult;
            Int d = diag(t);
            if (N == 0) {
                if (d != 0) continue;
                mult = 1;
            } else {
                Int g, s, u;
                ext_gcd(d, N, g, s, u);
                mult = N / g;
                if (mult % N == 0) continue;
            }
            std::vector<Int> v(k);
            for (size_t i = 0; i < k; ++i) v[i] = N != 0 ? comb(mult, Q[i][t], Int(0), Int(0)) : mult * Q[i][t];
            out.push_back(std::move(v));
        }
        return out;
    }
};

int64_t to_int64(const BigInt& v) {
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN))
        throw ArithmeticOverflow("linear-system solution exceeds 64-bit range");
    return static_cast<int64_t>(v);
}

// The R-linear system as a ℤ-linear system on leaf coordinates.
struct Lifted {
    const Ring* ring;
    size_t w, rows, cols;  // rows = m*w, cols = k*w
    std::vector<int64_t> leaf;
    std::vector<std::vector<int64_t>> phi;

    Lifted(const Matrix& A) : ring(&A.ring()) {
        w = ring->width();
        leaf = ring->leaf_moduli();
        rows = A.rows() * w;
        cols = A.cols() * w;
        phi.assign(rows, std::vector<int64_t>(cols, 0));
        std::vector<RingElement> units;
        for (size_t l = 0; l < w; ++l) {
            RingElement u(ring);
            u.coord(static_cast<int>(l)) = 1;
            units.push_back(u);
        }
        for (size_t j = 0; j < A.cols(); ++j)
            for (size_t l = 0; l < w; ++l)
                for (size_t i = 0; i < A.rows(); ++i) {
                    if (A.at(i, j).is_zero()) continue;
                    RingElement p = A.at(i, j) * units[l];
                    for (size_t l2 = 0; l2 < w; ++l2) phi[i * w + l2][j * w + l] = p.coord(static_cast<int>(l2));
                }
    }

    bool torsion_only() const {
        return std::all_of(leaf.begin(), leaf.end(), [](int64_t m) { return m > 0; });
    }

    int64_t lcm_modulus() const {
        __int128 n = 1;
        for (int64_t m : leaf) {
            n = n / std::gcd(static_cast<int64_t>(n), m) * m;
            if (n >= (static_cast<__int128>(1) << 31)) return 0;
        }
        return static_cast<int64_t>(n);
    }

    int64_t row_mod(size_t r) const { return leaf[r % w]; }
    int64_t col_mod(size_t c) const { return leaf[c % w]; }

    Vec to_vec(const std::vector<int64_t>& y) const {
        Vec out;
        size_t k = cols / w;
        for (size_t j = 0; j < k; ++j) {
            std::vector<int64_t> coords(w);
            for (size_t l = 0; l < w; ++l) coords[l] = y[j * w + l];
            out.push_back(ring->from_coords(coords));
        }
        return out;
    }
};

enum class Mode { Solve, Kernel };

struct LinearResult {
    std::optional<Vec> solution;
    std::vector<Vec> kernel;
};

LinearResult run_system(const Matrix& A, const Vec* b, Mode mode) {
    const Ring& R = A.ring();
    Lifted L(A);
    const size_t k = A.cols();
    LinearResult res;
    if (L.cols == 0) {
        if (mode == Mode::Solve) {
            if (!is_zero(*b)) return res;
            res.solution = Vec{};
        }
        return res;
    }

    std::vector<int64_t> rhs(L.rows, 0);
    if (b) {
        for (size_t i = 0; i < A.rows(); ++i)
            for (size_t l = 0; l < L.w; ++l) rhs[i * L.w + l] = (*b)[i].coord(static_cast<int>(l));
    }

    int64_t N = L.torsion_only() ? L.lcm_modulus() : 0;
    if (N > 0) {
        // All-torsion: scale row r by N/m_r so the congruence mod m_r becomes mod N.
        std::vector<std::vector<int64_t>> a = L.phi;
        for (size_t r = 0; r < L.rows; ++r) {
            int64_t s = N / L.row_mod(r);
            for (auto& x : a[r]) x = static_cast<int64_t>((static_cast<__int128>(x) * s) % N);
            rhs[r] = static_cast<int64_t>((static_cast<__int128>(rhs[r]) * s) % N);
        }
        if (L.rows == 0) a.clear();
        Smith<int64_t> snf(a.empty() ? std::vector<std::vector<int64_t>>{std::vector<int64_t>(L.cols, 0)} : a, N);
        if (a.empty()) rhs = {0};
        if (mode == Mode::Solve) {
            auto y = snf.solve(rhs);
            if (y) res.solution = L.to_vec(*y);
        } else {
            for (auto& y : snf.kernel()) res.kernel.push_back(L.to_vec(y));
        }
    } else {
        // Integer system with slack columns m_r for torsion rows.
        std::vector<size_t> tors_rows;
        for (size_t r = 0; r < L.rows; ++r)
            if (L.row_mod(r) > 0) tors_rows.push_back(r);
        size_t tc = L.cols + tors_rows.size();
        size_t nrows = std::max<size_t>(L.rows, 1);
        std::vector<std::vector<BigInt>> a(nrows, std::vector<BigInt>(tc, BigInt(0)));
        for (size_t r = 0; r < L.rows; ++r)
            for (size_t c = 0; c < L.cols; ++c) a[r][c] = L.phi[r][c];
        for (size_t s = 0; s < tors_rows.size(); ++s) a[tors_rows[s]][L.cols + s] = L.row_mod(tors_rows[s]);
        std::vector<BigInt> bb(nrows, BigInt(0));
        for (size_t r = 0; r < L.rows; ++r) bb[r] = rhs[r];
        Smith<BigInt> snf(a, BigInt(0));
        auto reduce_back = [&](const std::vector<BigInt>& y) {
            std::vector<int64_t> out(L.cols);
            for (size_t c = 0; c < L.cols; ++c) {
                BigInt v = y[c];
                int64_t m = L.col_mod(c);
                if (m > 0) {
                    v %= m;
                    if (v < 0) v += m;
                }
                out[c] = to_int64(v);
            }
            return out;
        };
        if (mode == Mode::Solve) {
            auto y = snf.solve(bb);
            if (y) res.solution = L.to_vec(reduce_back(*y));
        } else {
            for (auto& y : snf.kernel()) res.kernel.push_back(L.to_vec(reduce_back(y)));
        }
    }

    if (mode == Mode::Kernel) {
        // Drop zero and duplicate generators.
        std::vector<Vec> uniq;
        VecSet seen;
        for (auto& v : res.kernel) {
            if (is_zero(v) || seen.count(v)) continue;
            seen.insert(v);
            uniq.push_back(v);
        }
        std::sort(uniq.begin(), uniq.end(), vec_less);
        res.kernel = std::move(uniq);
        (void)R;
        (void)k;
    }
    return res;
}

}  // namespace

std::optional<Vec> solve_linear(const Matrix& A, const Vec& b) {
    if (b.size() != A.rows()) throw Error("right-hand side length mismatch");
    for (auto& x : b)
        if (x.ring_ptr() != &A.ring()) throw DescriptorMismatch("right-hand side ring mismatch");
    auto res = run_system(A, &b, Mode::Solve);
    if (res.solution && A * *res.solution != b) throw Error("internal: linear solution failed substitution check");
    return res.solution;
}

std::vector<Vec> nullspace(const Matrix& A) {
    auto res = run_system(A, nullptr, Mode::Kernel);
    for (auto& v : res.kernel)
        if (!is_zero(A * v)) throw Error("internal: kernel generator failed substitution check");
    return res.kernel;
}

std::optional<SmithDecomposition> smith_decomposition(const Matrix& A) {
    const Ring& R = A.ring();
    using K = RingDescriptor::Kind;
    auto kind = R.descriptor().kind;
    if (kind != K::Integers && kind != K::IntegersMod) return std::nullopt;
    const size_t m = A.rows(), k = A.cols();
    if (m == 0 || k == 0) return SmithDecomposition{Matrix::identity(R, m), A, Matrix::identity(R, k)};
    auto to_matrix = [&](const auto& rows, size_t r, size_t c) {
        Matrix out(R, r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) out.at(i, j) = R.from_int(to_int64(BigInt(rows[i][j])));
        return out;
    };
    if (kind == K::IntegersMod) {
        std::vector<std::vector<int64_t>> a(m, std::vector<int64_t>(k));
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < k; ++j) a[i][j] = A.at(i, j).coord(0);
        Smith<int64_t> snf(a, R.descriptor().modulus);
        return SmithDecomposition{to_matrix(snf.P, m, m), to_matrix(snf.A, m, k), to_matrix(snf.Q, k, k)};
    }
    std::vector<std::vector<BigInt>> a(m, std::vector<BigInt>(k));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < k; ++j) a[i][j] = A.at(i, j).coord(0);
    Smith<BigInt> snf(a, BigInt(0));
    return SmithDecomposition{to_matrix(snf.P, m, m), to_matrix(snf.A, m, k), to_matrix(snf.Q, k, k)};
}

RingElement determinant(const Matrix& A) {
    if (A.rows() != A.cols()) throw Error("determinant of a non-square matrix");
    const size_t n = A.rows();
    const Ring& R = A.ring();
    if (n == 0) return R.one();
    if (n > 20) throw Error("determinant size too large");
    std::vector<RingElement> f(size_t(1) << n, R.zero());
    f[0] = R.one();
    for (size_t mask = 0; mask < f.size(); ++mask) {
        if (f[mask].is_zero()) continue;
        size_t r = static_cast<size_t>(__builtin_popcountll(mask));
        if (r >= n) continue;
        for (size_t c = 0; c < n; ++c) {
            if (mask >> c & 1) continue;
            RingElement term = f[mask] * A.at(r, c);
            if (__builtin_popcountll(mask >> (c + 1)) & 1)
                f[mask | (size_t(1) << c)] -= term;
            else
                f[mask | (size_t(1) << c)] += term;
        }
    }
    return f.back();
}

std::optional<Matrix> inverse(const Matrix& A) {
    if (A.rows() != A.cols()) return std::nullopt;
    if (!determinant(A).try_invert()) return std::nullopt;
    const Ring& R = A.ring();
    size_t n = A.rows();
    std::vector<Vec> cols;
    for (size_t j = 0; j < n; ++j) {
        auto x = solve_linear(A, unit_vec(R, n, j));
        if (!x) return std::nullopt;
        cols.push_back(*x);
    }
    Matrix inv = Matrix::from_columns(R, n, cols);
    if (!(inv * A).is_identity()) return std::nullopt;
    return inv;
}

bool in_span(const Ring& r, size_t dim, const std::vector<Vec>& gens, const Vec& v) {
    if (is_zero(v)) return true;
    if (gens.empty()) return false;
    return solve_linear(Matrix::from_columns(r, dim, gens), v).has_value();
}

bool same_span(const Ring& r, size_t dim, const std::vector<Vec>& a, const std::vector<Vec>& b) {
    for (auto& v : a)
        if (!in_span(r, dim, b, v)) return false;
    for (auto& v : b)
        if (!in_span(r, dim, a, v)) return false;
    return true;
}

std::vector<Vec> enumerate_span(const Ring& r, size_t dim, const std::vector<Vec>& gens, uint64_t budget) {
    if (!r.is_finite()) throw NotComputable("span enumeration needs a finite ring");
    // Additive closure of the leaf-unit multiples of the generators.
    std::vector<Vec> adds;
    for (auto& g : gens)
        for (int l = 0; l < r.width(); ++l) {
            RingElement u(&r);
            u.coord(l) = 1;
            Vec v = scale(u, g);
            if (!is_zero(v)) adds.push_back(v);
        }
    VecSet seen;
    std::vector<Vec> frontier{zero_vec(r, dim)};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (auto& v : frontier)
            for (auto& a : adds) {
                Vec s = add(v, a);
                if (seen.insert(s).second) {
                    if (seen.size() > budget) throw BudgetExceeded("span enumeration budget exceeded");
                    next.push_back(std::move(s));
                }
            }
        frontier = std::move(next);
    }
    std::vector<Vec> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), vec_less);
    return out;
}

std::vector<Vec> all_vectors(const Ring& r, size_t n, uint64_t budget) {
    uint64_t s = r.size();
    unsigned __int128 total = 1;
    for (size_t i = 0; i < n; ++i) {
        total *= s;
        if (total > budget) throw BudgetExceeded("vector enumeration budget exceeded");
    }
    auto elems = r.elements();
    std::vector<Vec> out;
    out.reserve(static_cast<size_t>(total));
    std::vector<size_t> idx(n, 0);
    for (uint64_t c = 0; c < static_cast<uint64_t>(total); ++c) {
        Vec v(n);
        for (size_t i = 0; i < n; ++i) v[i] = elems[idx[i]];
        out.push_back(std::move(v));
        for (size_t i = n; i-- > 0;) {
            if (++idx[i] < s) break;
            idx[i] = 0;
        }
    }
    return out;
}

}  // namespace cliffring
