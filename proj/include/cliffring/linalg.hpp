#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "cliffring/ring.hpp"

namespace cliffring {

using Vec = std::vector<RingElement>;

Vec zero_vec(const Ring& r, size_t n);
Vec unit_vec(const Ring& r, size_t n, size_t i);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const RingElement& a, const Vec& v);
bool is_zero(const Vec& v);
std::string to_string(const Vec& v);

class Matrix {
public:
    Matrix() = default;
    Matrix(const Ring& r, size_t rows, size_t cols);
    static Matrix identity(const Ring& r, size_t n);
    static Matrix from_columns(const Ring& r, size_t rows, const std::vector<Vec>& cols);
    static Matrix from_ints(const Ring& r, const std::vector<std::vector<int64_t>>& rows);

    const Ring& ring() const { return *ring_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    RingElement& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const RingElement& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }
    Vec column(size_t j) const;
    Vec row(size_t i) const;

    Matrix operator*(const Matrix& b) const;
    Matrix operator+(const Matrix& b) const;
    Matrix operator-(const Matrix& b) const;
    Vec operator*(const Vec& v) const;
    Matrix transpose() const;
    bool operator==(const Matrix& b) const;
    bool operator!=(const Matrix& b) const { return !(*this == b); }
    bool operator<(const Matrix& b) const;
    bool is_identity() const;

    // Row-major nested lists of element strings.
    std::vector<std::vector<std::string>> to_strings() const;
    std::string to_string() const;

private:
    const Ring* ring_ = nullptr;
    size_t rows_ = 0, cols_ = 0;
    std::vector<RingElement> data_;
};

// Any x with A x = b, or nullopt. Complete over the whole ring universe:
// the system is lifted to the integer leaf coordinates and solved by Smith
// elimination over ℤ/N (finite rings) or ℤ (rings with free coordinates).
std::optional<Vec> solve_linear(const Matrix& A, const Vec& b);
// Generators of {x : A x = 0} as an R-module.
std::vector<Vec> nullspace(const Matrix& A);

// Unimodular P, Q with P·A·Q diagonal. Available over ℤ and ℤ/n only.
struct SmithDecomposition {
    Matrix P, D, Q;
};
std::optional<SmithDecomposition> smith_decomposition(const Matrix& A);

// Division-free determinant by expansion over column subsets.
RingElement determinant(const Matrix& A);
std::optional<Matrix> inverse(const Matrix& A);

// R-span membership and equality of spans.
bool in_span(const Ring& r, size_t dim, const std::vector<Vec>& gens, const Vec& v);
bool same_span(const Ring& r, size_t dim, const std::vector<Vec>& a, const std::vector<Vec>& b);

struct VecHash {
    size_t operator()(const Vec& v) const;
};
struct VecEq {
    bool operator()(const Vec& a, const Vec& b) const;
};
using VecSet = std::unordered_set<Vec, VecHash, VecEq>;

// Every element of span_R(gens) over a finite ring, sorted lexicographically.
std::vector<Vec> enumerate_span(const Ring& r, size_t dim, const std::vector<Vec>& gens, uint64_t budget = 10'000'000);
// All vectors of R^n over a finite ring, lexicographic.
std::vector<Vec> all_vectors(const Ring& r, size_t n, uint64_t budget = 10'000'000);
bool vec_less(const Vec& a, const Vec& b);

}  // namespace cliffring
