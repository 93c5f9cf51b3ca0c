#include "mflocus/matrix.hpp"

#include <sstream>

namespace mflocus {

PolyMatrix::PolyMatrix(VarsPtr vars, std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), vars_(std::move(vars)),
      data_(rows * cols, Polynomial::zero(vars_)) {}

PolyMatrix PolyMatrix::identity(VarsPtr vars, std::size_t n) {
    PolyMatrix m(vars, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = Polynomial::constant(vars, Rational(1));
    return m;
}

PolyMatrix PolyMatrix::from_rows(VarsPtr vars, std::vector<std::vector<Polynomial>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    PolyMatrix m(vars, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw PreconditionError("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) {
            require_same_vars(vars, rows[i][j].vars(), "matrix entries");
            m.at(i, j) = std::move(rows[i][j]);
        }
    }
    return m;
}

PolyMatrix PolyMatrix::blocks2x2(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c,
                                 const PolyMatrix& d) {
    std::size_t r1 = a.rows(), r2 = c.rows();
    std::size_t c1 = a.cols(), c2 = b.cols();
    if (b.rows() != r1 || d.rows() != r2 || c.cols() != c1 || d.cols() != c2)
        throw PreconditionError("incompatible block shapes");
    PolyMatrix m(a.vars_ ? a.vars_ : (b.vars_ ? b.vars_ : (c.vars_ ? c.vars_ : d.vars_)), r1 + r2,
                 c1 + c2);
    for (std::size_t i = 0; i < r1; ++i) {
        for (std::size_t j = 0; j < c1; ++j)
            m.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < c2; ++j)
            m.at(i, c1 + j) = b.at(i, j);
    }
    for (std::size_t i = 0; i < r2; ++i) {
        for (std::size_t j = 0; j < c1; ++j)
            m.at(r1 + i, j) = c.at(i, j);
        for (std::size_t j = 0; j < c2; ++j)
            m.at(r1 + i, c1 + j) = d.at(i, j);
    }
    return m;
}

PolyMatrix PolyMatrix::block_diag(const PolyMatrix& a, const PolyMatrix& b) {
    const VarsPtr& vars = a.vars_ ? a.vars_ : b.vars_;
    PolyMatrix zb(vars, a.rows(), b.cols());
    PolyMatrix zc(vars, b.rows(), a.cols());
    return blocks2x2(a, zb, zc, b);
}

// Kronecker product with the left factor varying slowest:
// kron(A,B)[i*B.rows+k][j*B.cols+l] = A[i][j] * B[k][l].
PolyMatrix PolyMatrix::kron(const PolyMatrix& a, const PolyMatrix& b) {
    const VarsPtr& vars = a.vars_ ? a.vars_ : b.vars_;
    PolyMatrix m(vars, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
    return m;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw PreconditionError("matrix shape mismatch in addition");
    PolyMatrix m(vars_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        m.data_[i] = data_[i] + other.data_[i];
    return m;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& other) const { return *this + (-other); }

PolyMatrix PolyMatrix::operator*(const PolyMatrix& other) const {
    if (cols_ != other.rows_)
        throw PreconditionError("matrix shape mismatch in multiplication");
    PolyMatrix m(vars_ ? vars_ : other.vars_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < other.cols_; ++j) {
            Polynomial acc = Polynomial::zero(m.vars());
            for (std::size_t k = 0; k < cols_; ++k)
                acc = acc + at(i, k) * other.at(k, j);
            m.at(i, j) = std::move(acc);
        }
    return m;
}

PolyMatrix PolyMatrix::operator-() const {
    PolyMatrix m = *this;
    for (auto& p : m.data_)
        p = -p;
    return m;
}

PolyMatrix PolyMatrix::scaled(const Rational& c) const {
    PolyMatrix m = *this;
    for (auto& p : m.data_)
        p = p.scaled(c);
    return m;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix m(vars_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m.at(j, i) = at(i, j);
    return m;
}

PolyMatrix PolyMatrix::map(const std::function<Polynomial(const Polynomial&)>& fn) const {
    PolyMatrix m = *this;
    for (auto& p : m.data_)
        p = fn(p);
    return m;
}

bool PolyMatrix::is_zero() const {
    for (const auto& p : data_)
        if (!p.is_zero())
            return false;
    return true;
}

bool PolyMatrix::operator==(const PolyMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

std::string PolyMatrix::to_string() const {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        out << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            out << (j ? ", " : "") << at(i, j).to_string();
        out << "]";
    }
    out << "]";
    return out.str();
}

std::size_t QMatrix::rank() const {
    QMatrix m = *this;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && m.at(pivot, col) == 0)
            ++pivot;
        if (pivot == m.rows())
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            std::swap(m.at(rank, j), m.at(pivot, j));
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            if (m.at(i, col) == 0)
                continue;
            Rational f = m.at(i, col) / m.at(rank, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

std::optional<std::vector<Rational>> solve_linear(const QMatrix& a, const std::vector<Rational>& b) {
    std::size_t rows = a.rows(), cols = a.cols();
    QMatrix m(rows, cols + 1);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = a.at(i, j);
        m.at(i, cols) = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m.at(pivot, col) == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        for (std::size_t j = 0; j <= cols; ++j)
            std::swap(m.at(rank, j), m.at(pivot, j));
        Rational d = m.at(rank, col);
        for (std::size_t j = col; j <= cols; ++j)
            m.at(rank, j) /= d;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m.at(i, col) == 0)
                continue;
            Rational f = m.at(i, col);
            for (std::size_t j = col; j <= cols; ++j)
                m.at(i, j) -= f * m.at(rank, j);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t i = rank; i < rows; ++i)
        if (m.at(i, cols) != 0)
            return std::nullopt; // inconsistent
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t r = 0; r < rank; ++r)
        x[pivot_col[r]] = m.at(r, cols);
    return x;
}

std::vector<std::vector<Rational>> nullspace(const QMatrix& a) {
    std::size_t rows = a.rows(), cols = a.cols();
    QMatrix m = a;
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m.at(pivot, col) == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        for (std::size_t j = 0; j < cols; ++j)
            std::swap(m.at(rank, j), m.at(pivot, j));
        Rational d = m.at(rank, col);
        for (std::size_t j = col; j < cols; ++j)
            m.at(rank, j) /= d;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m.at(i, col) == 0)
                continue;
            Rational f = m.at(i, col);
            for (std::size_t j = col; j < cols; ++j)
                m.at(i, j) -= f * m.at(rank, j);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col)
        is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < rank; ++r)
            v[pivot_col[r]] = -m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace mflocus
