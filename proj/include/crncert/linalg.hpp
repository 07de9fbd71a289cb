#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crncert {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IndexSet = std::vector<int>;  // strictly increasing 0-based indices

class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}
    RatMatrix(int rows, int cols, std::vector<Rat> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != size_t(rows) * cols) throw std::invalid_argument("RatMatrix: entry count mismatch");
    }
    static RatMatrix identity(int n);
    static RatMatrix from_int_rows(const std::vector<std::vector<long>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

    RatMatrix transpose() const;
    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix operator+(const RatMatrix& o) const;
    RatMatrix operator-() const;
    bool operator==(const RatMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
    bool is_zero() const;
    RatMatrix submatrix(const IndexSet& rows, const IndexSet& cols) const;
    // columns of `o` appended on the right
    RatMatrix hconcat(const RatMatrix& o) const;

private:
    int rows_, cols_;
    std::vector<Rat> e_;
};

// All k-element subsets of {0,...,d-1} in lexicographic order.
std::vector<IndexSet> k_subsets(int d, int k);

// Position of subset s in the lexicographic enumeration k_subsets(d, |s|).
int subset_index(const IndexSet& s, int d);

int rank(const RatMatrix& A);

Rat determinant(const RatMatrix& A);

// Shared-work minor evaluator: Laplace expansion memoized on (row-set, col-set).
class MinorCache {
public:
    explicit MinorCache(RatMatrix A) : A_(std::move(A)) {}
    Rat minor(const IndexSet& rows, const IndexSet& cols);

private:
    RatMatrix A_;
    std::map<std::pair<IndexSet, IndexSet>, Rat> memo_;
};

Rat minor(const RatMatrix& A, const IndexSet& alpha, const IndexSet& beta);

RatMatrix compound(const RatMatrix& A, int k);

RatMatrix hadamard_compound(const RatMatrix& A, const RatMatrix& B, int r);

// Sum of the r x r principal minors of A*B, r = rank(A); the determinant of
// A*B restricted to im(A).
Rat reduced_determinant(const RatMatrix& A, const RatMatrix& B);

// Exact basis of the right null space; empty iff the kernel is trivial.
std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& A);

// true iff every principal minor of square A is >= 0.
bool is_P0(const RatMatrix& A);

// Coefficients (c_0, ..., c_n) of det(lambda*I - A) = sum c_k lambda^k, exact
// (Faddeev-LeVerrier). Used as a cross-check oracle for reduced_determinant.
std::vector<Rat> char_poly(const RatMatrix& A);

std::string to_string(const Rat& r);
std::string to_string(const RatMatrix& A);

}  // namespace crncert
