#pragma once

#include <functional>
#include <vector>

#include "mflocus/expr.hpp"

namespace mflocus {

// Dense matrix of polynomials, row-major. Zero-by-n and n-by-zero shapes are
// legal throughout (they carry the degenerate components of factorizations).
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(VarsPtr vars, std::size_t rows, std::size_t cols);

    static PolyMatrix identity(VarsPtr vars, std::size_t n);
    static PolyMatrix from_rows(VarsPtr vars, std::vector<std::vector<Polynomial>> rows);
    // Assembles a 2x2 block matrix; blocks with zero rows/cols collapse away.
    static PolyMatrix blocks2x2(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c,
                                const PolyMatrix& d);
    static PolyMatrix block_diag(const PolyMatrix& a, const PolyMatrix& b);
    static PolyMatrix kron(const PolyMatrix& a, const PolyMatrix& b);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const VarsPtr& vars() const { return vars_; }

    const Polynomial& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Polynomial& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    PolyMatrix operator+(const PolyMatrix& other) const;
    PolyMatrix operator-(const PolyMatrix& other) const;
    PolyMatrix operator*(const PolyMatrix& other) const;
    PolyMatrix operator-() const;
    PolyMatrix scaled(const Rational& c) const;
    PolyMatrix transpose() const;
    PolyMatrix map(const std::function<Polynomial(const Polynomial&)>& fn) const;

    bool is_zero() const;
    bool operator==(const PolyMatrix& other) const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    VarsPtr vars_;
    std::vector<Polynomial> data_;
};

// Dense matrix of rationals, used for fibers at rational points.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::size_t rank() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

// Exact solver for A x = b over Q; returns a solution when one exists.
std::optional<std::vector<Rational>> solve_linear(const QMatrix& a, const std::vector<Rational>& b);

// Basis of the kernel of A over Q.
std::vector<std::vector<Rational>> nullspace(const QMatrix& a);

} // namespace mflocus
