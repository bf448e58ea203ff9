#include "temper/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace temper {

RMatrix RMatrix::identity(std::size_t n) {
    RMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RMatrix RMatrix::from_rows(const std::vector<RVec>& rows, std::size_t cols) {
    RMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RVec RMatrix::row(std::size_t i) const {
    return RVec(data.begin() + static_cast<std::ptrdiff_t>(i * cols),
                data.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
}

RVec RMatrix::column(std::size_t j) const {
    RVec out(rows);
    for (std::size_t i = 0; i < rows; ++i) out[i] = (*this)(i, j);
    return out;
}

bool RMatrix::is_zero() const {
    for (const auto& x : data)
        if (!x.is_zero()) return false;
    return true;
}

bool RMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix product: shape mismatch");
    RMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const Rational& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
        }
    return c;
}

RMatrix operator+(const RMatrix& a, const RMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("matrix sum: shape mismatch");
    RMatrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
    return c;
}

RMatrix operator-(const RMatrix& a, const RMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("matrix difference: shape mismatch");
    RMatrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] -= b.data[i];
    return c;
}

RMatrix operator*(const Rational& s, const RMatrix& a) {
    RMatrix c = a;
    for (auto& x : c.data) x *= s;
    return c;
}

RMatrix transpose(const RMatrix& a) {
    RMatrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

RMatrix commutator(const RMatrix& a, const RMatrix& b) { return a * b - b * a; }

RowEchelon row_reduce(RMatrix m) {
    RowEchelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m(p, c).is_zero()) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
        Rational inv = Rational(1) / m(r, c);
        for (std::size_t j = c; j < m.cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = RMatrix(r, m.cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out.reduced(i, j) = m(i, j);
    return out;
}

std::size_t rank(const RMatrix& m) { return row_reduce(m).rank(); }

std::size_t rank(const std::vector<RVec>& vectors, std::size_t dim) {
    Span s(dim);
    for (const auto& v : vectors) s.add(v);
    return s.dim();
}

std::vector<RVec> nullspace(const RMatrix& m) {
    RowEchelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<RVec> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        RVec v(m.cols);
        v[f] = 1;
        for (std::size_t i = 0; i < e.rank(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

RMatrix inverse(const RMatrix& m) {
    if (m.rows != m.cols) throw std::domain_error("inverse: matrix not square");
    std::size_t n = m.rows;
    RMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    RowEchelon e = row_reduce(aug);
    if (e.rank() < n || e.pivots[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
    RMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

RVec flatten(const RMatrix& m) { return m.data; }

RVec Span::reduce(RVec v) const {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const Rational f = v[pivots_[k]];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            if (!basis_[k][j].is_zero()) v[j] -= f * basis_[k][j];
    }
    return v;
}

bool Span::add(const RVec& v) {
    if (v.size() != dim_) throw std::invalid_argument("Span::add: arity mismatch");
    RVec r = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && r[p].is_zero()) ++p;
    if (p == dim_) return false;
    Rational inv = Rational(1) / r[p];
    for (auto& x : r) x *= inv;
    // keep existing rows reduced against the new pivot
    for (auto& b : basis_) {
        Rational f = b[p];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            if (!r[j].is_zero()) b[j] -= f * r[j];
    }
    basis_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
}

bool Span::contains(const RVec& v) const {
    if (v.size() != dim_) throw std::invalid_argument("Span::contains: arity mismatch");
    RVec r = reduce(v);
    for (const auto& x : r)
        if (!x.is_zero()) return false;
    return true;
}

} // namespace temper
