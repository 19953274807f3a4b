#include "axpir/galois.hpp"

#include <stdexcept>
#include <utility>

namespace axpir::galois {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

Field::Field(std::int64_t q) : q_(q) {
    if (!is_prime(q)) throw std::invalid_argument("Field: q must be prime");
}

std::int64_t Field::pow(std::int64_t a, std::int64_t e) const {
    a = reduce(a);
    std::int64_t acc = 1;
    while (e > 0) {
        if (e & 1) acc = mul(acc, a);
        a = mul(a, a);
        e >>= 1;
    }
    return acc;
}

std::int64_t Field::inv(std::int64_t a) const {
    a = reduce(a);
    if (a == 0) throw std::domain_error("Field: inverse of zero");
    return pow(a, q_ - 2);
}

FMatrix::FMatrix(int rows, int cols, const Field& f)
    : rows_(rows), cols_(cols), field_(f), data_(std::size_t(rows) * std::size_t(cols), 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("FMatrix: negative dimension");
}

FMatrix FMatrix::identity(int n, const Field& f) {
    FMatrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void FMatrix::set(int r, int c, std::int64_t v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::invalid_argument("FMatrix: index out of range");
    if (!field_.is_element(v)) throw std::invalid_argument("FMatrix: value not a field element");
    data_[std::size_t(r) * cols_ + c] = v;
}

FMatrix FMatrix::transposed() const {
    FMatrix t(cols_, rows_, field_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
}

FMatrix FMatrix::hconcat(const FMatrix& right) const {
    if (right.rows_ != rows_) throw std::invalid_argument("hconcat: row count mismatch");
    if (right.field_.q() != field_.q()) throw std::invalid_argument("hconcat: field mismatch");
    FMatrix m(rows_, cols_ + right.cols_, field_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) m.set(r, c, at(r, c));
        for (int c = 0; c < right.cols_; ++c) m.set(r, cols_ + c, right.at(r, c));
    }
    return m;
}

namespace {

// Row echelon form in place; returns the pivot column per eliminated row.
std::vector<int> eliminate(std::vector<std::int64_t>& a, int rows, int cols, const Field& f) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        for (int r = row; r < rows; ++r)
            if (a[std::size_t(r) * cols + col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int c = 0; c < cols; ++c)
                std::swap(a[std::size_t(piv) * cols + c], a[std::size_t(row) * cols + c]);
        std::int64_t pivot_inv = f.inv(a[std::size_t(row) * cols + col]);
        for (int c = col; c < cols; ++c)
            a[std::size_t(row) * cols + c] = f.mul(a[std::size_t(row) * cols + c], pivot_inv);
        for (int r = 0; r < rows; ++r) {
            if (r == row) continue;
            std::int64_t factor = a[std::size_t(r) * cols + col];
            if (factor == 0) continue;
            for (int c = col; c < cols; ++c)
                a[std::size_t(r) * cols + c] =
                    f.sub(a[std::size_t(r) * cols + c], f.mul(factor, a[std::size_t(row) * cols + c]));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int rank(const FMatrix& m) {
    std::vector<std::int64_t> a = m.data();
    return int(eliminate(a, m.rows(), m.cols(), m.field()).size());
}

bool column_space_contains(const FMatrix& a, const FMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("column_space_contains: row count mismatch");
    return rank(b.hconcat(a)) == rank(b);
}

std::vector<int> pivot_columns(const FMatrix& m) {
    std::vector<std::int64_t> a = m.data();
    return eliminate(a, m.rows(), m.cols(), m.field());
}

}  // namespace axpir::galois
