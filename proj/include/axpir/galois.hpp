#pragma once

#include <cstdint>
#include <vector>

namespace axpir::galois {

/// Prime field F_q. Elements are plain integers in [0, q).
class Field {
public:
    explicit Field(std::int64_t q);

    std::int64_t q() const { return q_; }

    std::int64_t add(std::int64_t a, std::int64_t b) const { return (a + b) % q_; }
    std::int64_t sub(std::int64_t a, std::int64_t b) const { return ((a - b) % q_ + q_) % q_; }
    std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a * b) % q_; }
    std::int64_t neg(std::int64_t a) const { return a == 0 ? 0 : q_ - a; }
    std::int64_t inv(std::int64_t a) const;  // throws std::domain_error on a == 0
    std::int64_t pow(std::int64_t a, std::int64_t e) const;

    std::int64_t reduce(std::int64_t v) const { return (v % q_ + q_) % q_; }
    bool is_element(std::int64_t v) const { return v >= 0 && v < q_; }

private:
    std::int64_t q_;
};

bool is_prime(std::int64_t n);

/// Dense row-major matrix over F_q.
class FMatrix {
public:
    FMatrix(int rows, int cols, const Field& f);
    static FMatrix identity(int n, const Field& f);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return field_; }

    std::int64_t at(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }
    void set(int r, int c, std::int64_t v);

    FMatrix transposed() const;

    /// Columns of `right` appended after the columns of this matrix.
    FMatrix hconcat(const FMatrix& right) const;

    const std::vector<std::int64_t>& data() const { return data_; }

private:
    int rows_, cols_;
    Field field_;
    std::vector<std::int64_t> data_;
};

/// Rank over F_q via Gaussian elimination (the input is copied).
int rank(const FMatrix& m);

/// True iff every column of `a` lies in the column space of `b`,
/// i.e. rank([b | a]) == rank(b). Throws on row-count mismatch.
bool column_space_contains(const FMatrix& a, const FMatrix& b);

/// Indices of a set of columns of `m` that form a basis of its column space
/// (the pivot columns of a row echelon form).
std::vector<int> pivot_columns(const FMatrix& m);

}  // namespace axpir::galois
