#pragma once

#include "temper/rational.hpp"

#include <cstddef>
#include <vector>

namespace temper {

/// Dense row-major rational matrix.
struct RMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rational> data;

    RMatrix() = default;
    RMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    static RMatrix identity(std::size_t n);
    static RMatrix from_rows(const std::vector<RVec>& rows, std::size_t cols);

    Rational& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    RVec row(std::size_t i) const;
    RVec column(std::size_t j) const;

    bool is_zero() const;
    bool is_diagonal() const;

    friend bool operator==(const RMatrix&, const RMatrix&) = default;
};

RMatrix operator*(const RMatrix& a, const RMatrix& b);
RMatrix operator+(const RMatrix& a, const RMatrix& b);
RMatrix operator-(const RMatrix& a, const RMatrix& b);
RMatrix operator*(const Rational& s, const RMatrix& a);
RMatrix transpose(const RMatrix& a);
RMatrix commutator(const RMatrix& a, const RMatrix& b);

struct RowEchelon {
    RMatrix reduced;                 ///< reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots; ///< pivot column of each row
    std::size_t rank() const { return pivots.size(); }
};

RowEchelon row_reduce(RMatrix m);
std::size_t rank(const RMatrix& m);
std::size_t rank(const std::vector<RVec>& vectors, std::size_t dim);

/// Basis of {x : m x = 0}, one vector per free column.
std::vector<RVec> nullspace(const RMatrix& m);

/// Throws std::domain_error when singular.
RMatrix inverse(const RMatrix& m);

/// Flattens a matrix row-major; used to treat matrices as vectors in a span.
RVec flatten(const RMatrix& m);

/// Incrementally maintained span of vectors (Gaussian elimination on insert).
class Span {
public:
    explicit Span(std::size_t dim) : dim_(dim) {}

    /// Adds v if it is independent of the current span; returns whether it was added.
    bool add(const RVec& v);
    bool contains(const RVec& v) const;
    std::size_t dim() const { return basis_.size(); }
    std::size_t ambient_dim() const { return dim_; }

private:
    RVec reduce(RVec v) const;

    std::size_t dim_;
    std::vector<RVec> basis_;          // echelon rows, pivot entry normalized to 1
    std::vector<std::size_t> pivots_;
};

} // namespace temper
