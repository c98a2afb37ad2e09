#pragma once

#include <flagalg/quadext.hpp>
#include <flagalg/rational.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flagalg {

/// Dense row-major matrix over an exact field (Rational or QuadExt).
template <class T>
class ExactMatrix
{
    public:
        ExactMatrix() = default;
        ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, T(0)) {}

        static ExactMatrix identity(int n)
        {
            ExactMatrix m(n, n);
            for (int i = 0; i < n; ++i)
                m(i, i) = T(1);
            return m;
        }

        int rows() const { return rows_; }
        int cols() const { return cols_; }
        T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
        const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

        bool is_symmetric() const
        {
            if (rows_ != cols_)
                return false;
            for (int i = 0; i < rows_; ++i)
                for (int j = i + 1; j < cols_; ++j)
                    if ((*this)(i, j) != (*this)(j, i))
                        return false;
            return true;
        }

        bool is_zero() const
        {
            for (auto& x : data_)
                if (! flagalg::is_zero(x))
                    return false;
            return true;
        }

        ExactMatrix transpose() const
        {
            ExactMatrix t(cols_, rows_);
            for (int i = 0; i < rows_; ++i)
                for (int j = 0; j < cols_; ++j)
                    t(j, i) = (*this)(i, j);
            return t;
        }

        friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b)
        {
            if (a.cols_ != b.rows_)
                throw std::invalid_argument("ExactMatrix: dimension mismatch in product");
            ExactMatrix c(a.rows_, b.cols_);
            for (int i = 0; i < a.rows_; ++i)
                for (int k = 0; k < a.cols_; ++k) {
                    const T& x = a(i, k);
                    if (flagalg::is_zero(x))
                        continue;
                    for (int j = 0; j < b.cols_; ++j)
                        c(i, j) += x * b(k, j);
                }
            return c;
        }

        friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b)
        {
            if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
                throw std::invalid_argument("ExactMatrix: dimension mismatch in sum");
            for (size_t i = 0; i < a.data_.size(); ++i)
                a.data_[i] += b.data_[i];
            return a;
        }

        friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b)
        {
            if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
                throw std::invalid_argument("ExactMatrix: dimension mismatch in difference");
            for (size_t i = 0; i < a.data_.size(); ++i)
                a.data_[i] -= b.data_[i];
            return a;
        }

        friend bool operator==(const ExactMatrix& a, const ExactMatrix& b)
        {
            return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
        }

        std::vector<T> apply(const std::vector<T>& v) const
        {
            if (static_cast<int>(v.size()) != cols_)
                throw std::invalid_argument("ExactMatrix: vector length mismatch");
            std::vector<T> out(rows_, T(0));
            for (int i = 0; i < rows_; ++i)
                for (int j = 0; j < cols_; ++j)
                    if (! flagalg::is_zero(v[j]))
                        out[i] += (*this)(i, j) * v[j];
            return out;
        }

    private:
        int rows_ = 0, cols_ = 0;
        std::vector<T> data_;
};

template <class T>
T quadratic_form(const ExactMatrix<T>& m, const std::vector<T>& v)
{
    auto mv = m.apply(v);
    T s(0);
    for (size_t i = 0; i < v.size(); ++i)
        s += v[i] * mv[i];
    return s;
}

template <class T>
struct PsdVerdict
{
    bool psd = true;
    /// On failure: a vector with v^T m v < 0.
    std::vector<T> witness;
};

/// Exact LDL^T with symmetric pivoting. Zero pivots are accepted.
template <class T>
PsdVerdict<T> psd_check(const ExactMatrix<T>& m)
{
    if (! m.is_symmetric())
        throw std::invalid_argument("psd_check: matrix is not symmetric");
    int n = m.rows();
    ExactMatrix<T> s = m;
    std::vector<bool> done(n, false);
    // elimination record: pivot index and its row at the time of elimination
    std::vector<std::pair<int, std::vector<T>>> steps;

    auto lift = [&](std::vector<T> x) {
        // x is supported on not-yet-eliminated indices; back-substitute pivots in reverse
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            int k = it->first;
            const auto& row = it->second;
            T acc(0);
            for (int j = 0; j < n; ++j)
                if (j != k && ! flagalg::is_zero(row[j]) && ! flagalg::is_zero(x[j]))
                    acc += row[j] * x[j];
            x[k] = -acc / row[k];
        }
        return x;
    };

    for (int round = 0; round < n; ++round) {
        int pivot = -1;
        for (int i = 0; i < n; ++i) {
            if (done[i])
                continue;
            int sg = flagalg::sign(s(i, i));
            if (sg < 0) {
                std::vector<T> x(n, T(0));
                x[i] = T(1);
                return {false, lift(std::move(x))};
            }
            if (sg > 0 && pivot < 0)
                pivot = i;
        }
        if (pivot < 0) {
            // all remaining diagonal entries vanish: any off-diagonal entry makes s indefinite
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (! done[i] && ! done[j] && ! flagalg::is_zero(s(i, j))) {
                        std::vector<T> x(n, T(0));
                        x[i] = T(1);
                        x[j] = flagalg::sign(s(i, j)) > 0 ? T(-1) : T(1);
                        return {false, lift(std::move(x))};
                    }
            return {true, {}};
        }
        std::vector<T> row(n, T(0));
        for (int j = 0; j < n; ++j)
            if (! done[j])
                row[j] = s(pivot, j);
        done[pivot] = true;
        const T p = row[pivot];
        for (int i = 0; i < n; ++i) {
            if (done[i] || flagalg::is_zero(row[i]))
                continue;
            T f = row[i] / p;
            for (int j = 0; j < n; ++j)
                if (! done[j] && ! flagalg::is_zero(row[j]))
                    s(i, j) -= f * row[j];
        }
        steps.emplace_back(pivot, std::move(row));
    }
    return {true, {}};
}

/// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<int> rref(ExactMatrix<T>& a)
{
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int p = -1;
        for (int i = r; i < a.rows(); ++i)
            if (! flagalg::is_zero(a(i, c))) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        if (p != r)
            for (int j = 0; j < a.cols(); ++j)
                std::swap(a(p, j), a(r, j));
        T inv = T(1) / a(r, c);
        for (int j = c; j < a.cols(); ++j)
            a(r, j) *= inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || flagalg::is_zero(a(i, c)))
                continue;
            T f = a(i, c);
            for (int j = c; j < a.cols(); ++j)
                if (! flagalg::is_zero(a(r, j)))
                    a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Fraction-free rank of a rational matrix (rows scaled to integers, then Bareiss).
int rank_bareiss(const ExactMatrix<Rational>& m);

/// Solves a square rational system fraction-free (rows scaled to integers, Bareiss
/// elimination, rational back substitution); nullopt if singular.
std::optional<std::vector<Rational>> solve_bareiss(const ExactMatrix<Rational>& a, const std::vector<Rational>& b);

template <class T>
int rank(const ExactMatrix<T>& m)
{
    ExactMatrix<T> a = m;
    return static_cast<int>(rref(a).size());
}

template <>
inline int rank(const ExactMatrix<Rational>& m)
{
    return rank_bareiss(m);
}

/// Basis of the right null space {v : m v = 0}.
template <class T>
std::vector<std::vector<T>> kernel_basis(const ExactMatrix<T>& m)
{
    ExactMatrix<T> a = m;
    auto pivots = rref(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots)
        is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<T> v(m.cols(), T(0));
        v[f] = T(1);
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -a(static_cast<int>(r), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
int corank(const ExactMatrix<T>& m)
{
    return m.cols() - rank(m);
}

/// Solves a x = b for square or overdetermined consistent systems; nullopt if inconsistent.
template <class T>
std::optional<std::vector<T>> solve_linear(const ExactMatrix<T>& a, const std::vector<T>& b)
{
    ExactMatrix<T> aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = b.at(i);
    }
    auto pivots = rref(aug);
    if (! pivots.empty() && pivots.back() == a.cols())
        return std::nullopt;
    std::vector<T> x(a.cols(), T(0));
    for (size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug(static_cast<int>(r), a.cols());
    return x;
}

} // namespace flagalg
