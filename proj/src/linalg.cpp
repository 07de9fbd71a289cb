#include "crncert/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace crncert {

RatMatrix RatMatrix::identity(int n) {
    RatMatrix I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

RatMatrix RatMatrix::from_int_rows(const std::vector<std::vector<long>>& rows) {
    int n = int(rows.size());
    int m = n ? int(rows[0].size()) : 0;
    RatMatrix A(n, m);
    for (int i = 0; i < n; ++i) {
        if (int(rows[i].size()) != m) throw std::invalid_argument("ragged rows");
        for (int j = 0; j < m; ++j) A.at(i, j) = rows[i][j];
    }
    return A;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix T(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) T.at(j, i) = at(i, j);
    return T;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    RatMatrix C(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) C.at(i, j) += a * o.at(k, j);
        }
    return C;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    RatMatrix C(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) C.e_[i] = e_[i] + o.e_[i];
    return C;
}

RatMatrix RatMatrix::operator-() const {
    RatMatrix C(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) C.e_[i] = -e_[i];
    return C;
}

bool RatMatrix::is_zero() const {
    for (const Rat& x : e_)
        if (x != 0) return false;
    return true;
}

RatMatrix RatMatrix::submatrix(const IndexSet& rows, const IndexSet& cols) const {
    RatMatrix S(int(rows.size()), int(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) S.at(int(i), int(j)) = at(rows[i], cols[j]);
    return S;
}

RatMatrix RatMatrix::hconcat(const RatMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hconcat row mismatch");
    RatMatrix C(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) C.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) C.at(i, cols_ + j) = o.at(i, j);
    }
    return C;
}

std::vector<IndexSet> k_subsets(int d, int k) {
    std::vector<IndexSet> out;
    if (k < 0 || k > d) return out;
    IndexSet cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == d - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    if (k == 0) out = {IndexSet{}};
    return out;
}

int subset_index(const IndexSet& s, int d) {
    // Lexicographic rank of a k-subset of {0..d-1}.
    int k = int(s.size());
    long long idx = 0;
    int prev = -1;
    auto choose = [](int n, int r) -> long long {
        if (r < 0 || r > n) return 0;
        long long c = 1;
        for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
        return c;
    };
    for (int i = 0; i < k; ++i) {
        for (int v = prev + 1; v < s[i]; ++v) idx += choose(d - v - 1, k - i - 1);
        prev = s[i];
    }
    return int(idx);
}

static void check_index_set(const IndexSet& s, int dim, const char* what) {
    if (s.empty()) throw std::invalid_argument(std::string(what) + ": empty index set");
    int prev = -1;
    for (int v : s) {
        if (v <= prev || v >= dim) throw std::invalid_argument(std::string(what) + ": bad index set");
        prev = v;
    }
}

int rank(const RatMatrix& A) {
    // Fraction-free (Bareiss) elimination.
    int n = A.rows(), m = A.cols();
    if (n == 0 || m == 0) return 0;
    RatMatrix M = A;
    int r = 0;
    for (int col = 0; col < m && r < n; ++col) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (M.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m; ++j) std::swap(M.at(piv, j), M.at(r, j));
        for (int i = r + 1; i < n; ++i) {
            Rat f = M.at(i, col) / M.at(r, col);
            for (int j = col; j < m; ++j) M.at(i, j) -= f * M.at(r, j);
        }
        ++r;
    }
    return r;
}

Rat determinant(const RatMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("determinant: not square");
    int n = A.rows();
    if (n == 0) return 1;
    RatMatrix M = A;
    Rat det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (M.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(M.at(piv, j), M.at(col, j));
            det = -det;
        }
        det *= M.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            Rat f = M.at(i, col) / M.at(col, col);
            for (int j = col; j < n; ++j) M.at(i, j) -= f * M.at(col, j);
        }
    }
    return det;
}

Rat MinorCache::minor(const IndexSet& rows, const IndexSet& cols) {
    if (rows.size() != cols.size()) throw std::invalid_argument("minor: |alpha| != |beta|");
    check_index_set(rows, A_.rows(), "minor rows");
    check_index_set(cols, A_.cols(), "minor cols");
    auto key = std::make_pair(rows, cols);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Rat val;
    if (rows.size() == 1) {
        val = A_.at(rows[0], cols[0]);
    } else {
        // Laplace expansion along the first listed row.
        IndexSet sub_rows(rows.begin() + 1, rows.end());
        int sign = 1;
        for (size_t j = 0; j < cols.size(); ++j) {
            const Rat& a = A_.at(rows[0], cols[j]);
            if (a != 0) {
                IndexSet sub_cols;
                sub_cols.reserve(cols.size() - 1);
                for (size_t t = 0; t < cols.size(); ++t)
                    if (t != j) sub_cols.push_back(cols[t]);
                val += sign * a * minor(sub_rows, sub_cols);
            }
            sign = -sign;
        }
    }
    memo_.emplace(std::move(key), val);
    return val;
}

Rat minor(const RatMatrix& A, const IndexSet& alpha, const IndexSet& beta) {
    MinorCache cache(A);
    return cache.minor(alpha, beta);
}

RatMatrix compound(const RatMatrix& A, int k) {
    if (k < 1 || k > std::min(A.rows(), A.cols())) throw std::out_of_range("compound: k out of range");
    auto row_sets = k_subsets(A.rows(), k);
    auto col_sets = k_subsets(A.cols(), k);
    MinorCache cache(A);
    RatMatrix C(int(row_sets.size()), int(col_sets.size()));
    for (size_t i = 0; i < row_sets.size(); ++i)
        for (size_t j = 0; j < col_sets.size(); ++j) C.at(int(i), int(j)) = cache.minor(row_sets[i], col_sets[j]);
    return C;
}

RatMatrix hadamard_compound(const RatMatrix& A, const RatMatrix& B, int r) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw std::invalid_argument("hadamard_compound: shape mismatch");
    RatMatrix CA = compound(A, r), CB = compound(B, r);
    RatMatrix C(CA.rows(), CA.cols());
    for (int i = 0; i < C.rows(); ++i)
        for (int j = 0; j < C.cols(); ++j) C.at(i, j) = CA.at(i, j) * CB.at(i, j);
    return C;
}

Rat reduced_determinant(const RatMatrix& A, const RatMatrix& B) {
    if (B.rows() != A.cols() || B.cols() != A.rows()) throw std::invalid_argument("reduced_determinant: shape mismatch");
    if (A.is_zero()) throw std::invalid_argument("reduced_determinant: zero matrix");
    int r = rank(A);
    RatMatrix AB = A * B;
    MinorCache cache(AB);
    Rat sum = 0;
    for (const IndexSet& alpha : k_subsets(AB.rows(), r)) sum += cache.minor(alpha, alpha);
    return sum;
}

std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& A) {
    int n = A.rows(), m = A.cols();
    std::vector<std::vector<Rat>> basis;
    if (m == 0) return basis;
    if (n == 0) {
        for (int j = 0; j < m; ++j) {
            std::vector<Rat> v(m);
            v[j] = 1;
            basis.push_back(v);
        }
        return basis;
    }
    RatMatrix M = A;
    std::vector<int> pivot_col;
    int r = 0;
    for (int col = 0; col < m && r < n; ++col) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (M.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m; ++j) std::swap(M.at(piv, j), M.at(r, j));
        Rat p = M.at(r, col);
        for (int j = 0; j < m; ++j) M.at(r, j) /= p;
        for (int i = 0; i < n; ++i) {
            if (i == r) continue;
            Rat f = M.at(i, col);
            if (f == 0) continue;
            for (int j = 0; j < m; ++j) M.at(i, j) -= f * M.at(r, j);
        }
        pivot_col.push_back(col);
        ++r;
    }
    std::vector<bool> is_pivot(m, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int free = 0; free < m; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(m);
        v[free] = 1;
        for (int i = 0; i < int(pivot_col.size()); ++i) v[pivot_col[i]] = -M.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool is_P0(const RatMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("is_P0: not square");
    MinorCache cache(A);
    for (int k = 1; k <= A.rows(); ++k)
        for (const IndexSet& alpha : k_subsets(A.rows(), k))
            if (cache.minor(alpha, alpha) < 0) return false;
    return true;
}

std::vector<Rat> char_poly(const RatMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("char_poly: not square");
    int n = A.rows();
    // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr(A);
    // M_{k+1} = A (M_k + c_{n-k} I), c_{n-k-1} = -tr(M_{k+1})/(k+1).
    std::vector<Rat> c(size_t(n) + 1);
    c[n] = 1;
    RatMatrix M = A;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            RatMatrix N = M;
            for (int i = 0; i < n; ++i) N.at(i, i) += c[n - k + 1];
            M = A * N;
        }
        Rat tr = 0;
        for (int i = 0; i < n; ++i) tr += M.at(i, i);
        c[n - k] = -tr / k;
    }
    return c;
}

std::string to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string to_string(const RatMatrix& A) {
    std::ostringstream os;
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) {
            if (j) os << ' ';
            os << A.at(i, j);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace crncert
